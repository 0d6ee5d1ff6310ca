#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "abstractpose/codec_params.hpp"
#include "abstractpose/environment.hpp"
#include "abstractpose/renderer.hpp"
#include "abstractpose/skeleton.hpp"

namespace abstractpose::cli {

enum class LengthMode { kMatched, kNominal, kExplicit };

/// Everything a command needs. Relative paths inside a manifest file are
/// resolved against the manifest's directory.
struct Manifest {
  std::filesystem::path poses;
  std::filesystem::path predictions;  // metrics: poses to score against `poses`
  std::filesystem::path heatmap_dir;  // decode: where the PHM1 files live
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 0;
  std::optional<CameraIndex> camera;  // nullopt: sample per frame
  int cameras_per_frame = 1;
  int workers = 1;

  EnvConfig env;
  CodecParams codec;
  RenderConfig render;

  LengthMode length_mode = LengthMode::kMatched;
  std::array<double, kNumBones> bone_lengths{};  // used with kExplicit
  double length_scale = 1.0;
  double noise = 0.0;  // uniform amplitude added to "predicted" heatmaps
  int max_drop = 4;

  void validate() const;
};

Manifest manifest_from_json(std::string_view text, const std::filesystem::path& base_dir);
Manifest read_manifest(const std::filesystem::path& path);

/// "random" or "i,j".
std::optional<CameraIndex> parse_camera(std::string_view text);

}  // namespace abstractpose::cli
