#pragma once

#include <span>

#include "abstractpose/environment.hpp"
#include "abstractpose/skeleton.hpp"

namespace abstractpose {

struct Reconstruction {
  Pose pose;               // root at the origin
  Vec3 camera_indicator;   // unit vector towards the inferred camera
};

/// Rebuilds a pose from a subject-relative viewpoint index and camera-frame
/// bone directions. The room is taken with its seam already behind the
/// subject (identity permutation), so the result matches the original pose
/// up to a rotation about the vertical axis.
Reconstruction reconstruct(CameraIndex rotated_index, std::span<const Vec3> bones_cam,
                           const SyntheticEnvironment& env, std::span<const double> bone_lengths);

/// Worst-case joint displacement bound (root-centred RMS over joints) caused
/// by snapping each bone direction to a pose-map bin centre, given the bone
/// lengths. Any rotation-aligned MPJPE of a clean round trip stays below it.
double quantization_bound_mm(std::span<const double> bone_lengths, int bins);

/// Largest angle, in degrees, between a direction and the centre of its
/// (theta, phi) bin.
double max_bin_angular_error_deg(int bins);

}  // namespace abstractpose
