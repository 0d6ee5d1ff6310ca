#include "abstractpose/reconstruct.hpp"

#include <cmath>
#include <string>

#include "abstractpose/viewpoint_codec.hpp"

namespace abstractpose {

Reconstruction reconstruct(CameraIndex rotated_index, std::span<const Vec3> bones_cam,
                           const SyntheticEnvironment& env, std::span<const double> bone_lengths) {
  if (bones_cam.size() != kNumBones || bone_lengths.size() != kNumBones) {
    fail(ErrorCode::kInvalidArgument, "expected 13 bone directions and 13 lengths");
  }
  if (!env.contains(rotated_index)) fail(ErrorCode::kOutOfRange, "viewpoint index outside the rig");
  for (std::size_t k = 0; k < bones_cam.size(); ++k) {
    if (!bones_cam[k].allFinite() || std::abs(bones_cam[k].norm() - 1.0) > 1e-6) {
      fail(ErrorCode::kInvalidArgument, "bone " + std::to_string(k) + " is not a unit vector");
    }
    if (!(bone_lengths[k] > 0.0) || !std::isfinite(bone_lengths[k])) {
      fail(ErrorCode::kInvalidArgument, "bone length " + std::to_string(k) + " must be positive");
    }
  }

  // A subject facing the way column 0 looks puts the seam at column 0.
  const CameraIndexPermutation room = rotate_camera_array(env, env.forward({0, 0}));
  const Mat3& rotation = room.rotation(rotated_index);

  std::array<Vec3, kNumBones> world;
  for (std::size_t k = 0; k < world.size(); ++k) world[k] = rotation * bones_cam[k];

  Reconstruction out;
  out.pose = compose_pose(world, bone_lengths);
  out.camera_indicator = room.position(rotated_index).normalized();
  return out;
}

double max_bin_angular_error_deg(int bins) {
  // Worst case sits on a bin corner next to the equator: half a bin off in
  // both azimuth and elevation, where cos(d) = cos(a) cos(b).
  const double half = deg_to_rad(180.0 / bins);
  return rad_to_deg(std::acos(std::cos(half) * std::cos(half)));
}

double quantization_bound_mm(std::span<const double> bone_lengths, int bins) {
  if (bone_lengths.size() != kNumBones) fail(ErrorCode::kInvalidArgument, "expected 13 lengths");
  const double chord = 2.0 * std::sin(0.5 * deg_to_rad(max_bin_angular_error_deg(bins)));
  std::array<double, kNumJoints> reach{};
  const auto& bones = bone_order();
  for (std::size_t k = 0; k < bones.size(); ++k) {
    reach[static_cast<std::size_t>(index_of(bones[k].child))] =
        reach[static_cast<std::size_t>(index_of(bones[k].parent))] + chord * bone_lengths[k];
  }
  double sum_sq = 0.0;
  for (double r : reach) sum_sq += r * r;
  return std::sqrt(sum_sq / kNumJoints);
}

}  // namespace abstractpose
