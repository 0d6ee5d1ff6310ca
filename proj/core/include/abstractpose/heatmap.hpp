#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "abstractpose/common.hpp"

namespace abstractpose {

/// Dense channels x rows x cols float tensor, row-major within a channel.
class Heatmap {
 public:
  Heatmap() = default;
  Heatmap(int channels, int rows, int cols);

  int channels() const { return channels_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  float& at(int channel, int row, int col) { return values_[offset(channel, row, col)]; }
  float at(int channel, int row, int col) const { return values_[offset(channel, row, col)]; }

  std::span<float> channel(int c);
  std::span<const float> channel(int c) const;
  std::span<const float> values() const { return values_; }
  std::span<float> values() { return values_; }

  bool operator==(const Heatmap&) const = default;

 private:
  std::size_t offset(int channel, int row, int col) const {
    return (static_cast<std::size_t>(channel) * static_cast<std::size_t>(rows_) +
            static_cast<std::size_t>(row)) *
               static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(col);
  }

  int channels_ = 0;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<float> values_;
};

/// Unnormalised Gaussian exp(-(dx^2 + dy^2) / (2 sigma^2)).
double gaussian(double dx, double dy, double sigma);

struct Peak {
  int row = 0;
  int col = 0;
  float value = 0.0f;
};

/// Largest cell of a channel; ties go to the smallest (row, col). Throws
/// kNoDetection when the channel has no positive value, kInvalidArgument
/// on non-finite input.
Peak find_peak(const Heatmap& map, int channel);

/// PHM1: "PHM1", then little-endian u32 channels, rows, cols, then
/// little-endian IEEE-754 float32 values in channel/row/col order.
void write_phm(std::ostream& out, const Heatmap& map);
Heatmap read_phm(std::istream& in);

}  // namespace abstractpose
