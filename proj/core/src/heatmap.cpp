#include "abstractpose/heatmap.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>

namespace abstractpose {
namespace {

constexpr std::array<char, 4> kMagic = {'P', 'H', 'M', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> bytes = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                     static_cast<char>((v >> 16) & 0xff),
                                     static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes.data(), 4);
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), 4)) fail(ErrorCode::kParse, "truncated PHM1 header");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

Heatmap::Heatmap(int channels, int rows, int cols)
    : channels_(channels), rows_(rows), cols_(cols) {
  if (channels <= 0 || rows <= 0 || cols <= 0) {
    fail(ErrorCode::kInvalidArgument, "heatmap dimensions must be positive");
  }
  values_.assign(static_cast<std::size_t>(channels) * static_cast<std::size_t>(rows) *
                     static_cast<std::size_t>(cols),
                 0.0f);
}

std::span<float> Heatmap::channel(int c) {
  const std::size_t n = static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_);
  return std::span<float>(values_).subspan(static_cast<std::size_t>(c) * n, n);
}

std::span<const float> Heatmap::channel(int c) const {
  const std::size_t n = static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_);
  return std::span<const float>(values_).subspan(static_cast<std::size_t>(c) * n, n);
}

double gaussian(double dx, double dy, double sigma) {
  return std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
}

Peak find_peak(const Heatmap& map, int channel) {
  if (channel < 0 || channel >= map.channels()) fail(ErrorCode::kOutOfRange, "channel out of range");
  Peak best;
  best.value = -std::numeric_limits<float>::infinity();
  for (int r = 0; r < map.rows(); ++r) {
    for (int c = 0; c < map.cols(); ++c) {
      const float v = map.at(channel, r, c);
      if (!std::isfinite(v)) fail(ErrorCode::kInvalidArgument, "non-finite heatmap value");
      if (v > best.value) best = {r, c, v};
    }
  }
  if (!(best.value > 0.0f)) fail(ErrorCode::kNoDetection, "heatmap channel has no positive response");
  return best;
}

void write_phm(std::ostream& out, const Heatmap& map) {
  static_assert(std::numeric_limits<float>::is_iec559 && sizeof(float) == 4);
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, static_cast<std::uint32_t>(map.channels()));
  put_u32(out, static_cast<std::uint32_t>(map.rows()));
  put_u32(out, static_cast<std::uint32_t>(map.cols()));
  for (float v : map.values()) put_u32(out, std::bit_cast<std::uint32_t>(v));
  if (!out) fail(ErrorCode::kIo, "failed writing PHM1 data");
}

Heatmap read_phm(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4) || magic != kMagic) fail(ErrorCode::kParse, "missing PHM1 magic");
  const std::uint32_t channels = get_u32(in);
  const std::uint32_t rows = get_u32(in);
  const std::uint32_t cols = get_u32(in);
  constexpr std::uint32_t kMaxDim = 1u << 16;
  if (channels == 0 || rows == 0 || cols == 0 || channels > kMaxDim || rows > kMaxDim ||
      cols > kMaxDim) {
    fail(ErrorCode::kParse, "implausible PHM1 dimensions");
  }
  Heatmap map(static_cast<int>(channels), static_cast<int>(rows), static_cast<int>(cols));
  for (float& v : map.values()) {
    try {
      v = std::bit_cast<float>(get_u32(in));
    } catch (const Error&) {
      fail(ErrorCode::kParse, "truncated PHM1 payload");
    }
  }
  return map;
}

}  // namespace abstractpose
