#pragma once

#include <array>
#include <random>
#include <span>

#include "abstractpose/codec_params.hpp"
#include "abstractpose/environment.hpp"
#include "abstractpose/heatmap.hpp"
#include "abstractpose/metrics.hpp"
#include "abstractpose/reconstruct.hpp"
#include "abstractpose/skeleton.hpp"

namespace abstractpose {

/// Which inputs are ground truth when rebuilding a pose:
///   1: true viewpoint index, ground-truth pose maps
///   2: true viewpoint index, predicted pose maps
///   3: predicted viewpoint map, predicted pose maps
/// Pose maps are always decoded, so configuration 1 still carries the bin
/// quantisation.
enum class Configuration : int { kGroundTruth = 1, kDecodedPose = 2, kDecodedAll = 3 };

inline constexpr std::array<Configuration, 3> kAllConfigurations = {
    Configuration::kGroundTruth, Configuration::kDecodedPose, Configuration::kDecodedAll};

/// Training targets for one (pose, camera) pair.
struct EncodedFrame {
  CameraIndex camera;          // original rig index used to view the subject
  CameraIndex rotated_camera;  // subject-relative index, seam behind the subject
  int shift = 0;
  BoneDecomposition bones;
  std::array<Vec3, kNumBones> bones_cam;
  Heatmap viewpoint;  // 1 x heatmap_size x heatmap_size
  Heatmap pose;       // 13 x pose_map_size x pose_map_size
};

/// Throws kDegenerate when the subject's forward vector cannot be formed or
/// is vertical.
EncodedFrame encode_frame(const Pose& world, CameraIndex camera, const SyntheticEnvironment& env,
                          const CodecParams& params);

/// Stand-ins for network output.
struct PredictedMaps {
  Heatmap viewpoint;
  Heatmap pose;
};

/// Ground-truth maps, optionally corrupted with uniform noise.
PredictedMaps predict_maps(const EncodedFrame& frame, double noise_amplitude, std::mt19937_64& rng);

Reconstruction reconstruct_frame(const EncodedFrame& frame, const PredictedMaps& predicted,
                                 Configuration config, const SyntheticEnvironment& env,
                                 std::span<const double> bone_lengths);

/// Same, with the clean ground-truth maps as predictions.
Reconstruction reconstruct_frame(const EncodedFrame& frame, Configuration config,
                                 const SyntheticEnvironment& env,
                                 std::span<const double> bone_lengths);

/// Adds independent uniform noise in [-amplitude, amplitude] to every cell.
void add_uniform_noise(Heatmap& map, double amplitude, std::mt19937_64& rng);

}  // namespace abstractpose
