#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "abstractpose/codec_params.hpp"
#include "abstractpose/environment.hpp"
#include "abstractpose/heatmap.hpp"
#include "abstractpose/metrics.hpp"
#include "abstractpose/renderer.hpp"
#include "abstractpose/skeleton.hpp"

namespace abstractpose::io {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

// Pose corpus: [{"joints": [[x, y, z] x 14]}, ...], joint order as in Joint.
std::vector<Pose> poses_from_json(std::string_view text);
std::string poses_to_json(std::span<const Pose> poses);
std::vector<Pose> read_poses(const std::filesystem::path& path);
void write_poses(const std::filesystem::path& path, std::span<const Pose> poses);

// Rig description. Missing keys keep their defaults.
EnvConfig env_config_from_json(std::string_view text);
std::string env_config_to_json(const EnvConfig& config);
EnvConfig read_env_config(const std::filesystem::path& path);

// Bone-length preset: JSON array of 13 lengths in mm, bone_order() order.
std::array<double, kNumBones> bone_lengths_from_json(std::string_view text);
std::array<double, kNumBones> read_bone_lengths(const std::filesystem::path& path);

/// 8-bit raster, 1 (gray) or 3 (RGB) channels.
struct Raster {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<std::uint8_t> data;

  bool operator==(const Raster&) const = default;
};

Raster rgb_raster(const AbstractImage& image);
Raster provenance_raster(const AbstractImage& image);

/// Binary P6 for 3 channels, P5 for 1 channel, maxval 255.
std::string encode_pnm(const Raster& raster);
Raster decode_pnm(std::string_view bytes);

void write_ppm(const std::filesystem::path& path, const AbstractImage& image);
void write_pgm(const std::filesystem::path& path, const AbstractImage& image);

std::string encode_heatmap(const Heatmap& map);
Heatmap decode_heatmap(std::string_view bytes);
void write_heatmap(const std::filesystem::path& path, const Heatmap& map);
Heatmap read_heatmap(const std::filesystem::path& path);

/// {"aggregate": {...}, "frames": [...], "skipped": [...]}
std::string eval_report_to_json(const EvalReport& report, int indent = 2);

}  // namespace abstractpose::io
