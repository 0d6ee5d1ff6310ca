#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "abstractpose/environment.hpp"
#include "abstractpose/skeleton.hpp"

namespace abstractpose {

// All sampling draws raw 64-bit words from std::mt19937_64 and converts them
// with the helpers below, so streams are reproducible across standard
// libraries (the <random> distributions are not).

/// Stream for one frame: mt19937_64 seeded with splitmix64(seed ^ (frame * 0x9E3779B97F4A7C15)).
std::mt19937_64 frame_rng(std::uint64_t seed, std::uint64_t frame);

std::uint64_t splitmix64(std::uint64_t x);

/// (word >> 11) * 2^-53, in [0, 1).
double uniform01(std::mt19937_64& rng);

/// Integer in [0, n).
int uniform_index(std::mt19937_64& rng, int n);

/// Uniform on the unit sphere (z uniform in [-1, 1], azimuth uniform).
Vec3 sample_unit_vector(std::mt19937_64& rng);

/// Uniform rotation from a random unit quaternion.
Mat3 sample_rotation(std::mt19937_64& rng);

CameraIndex sample_camera(std::mt19937_64& rng, const SyntheticEnvironment& env);

/// Rough adult proportions in mm, bone_order() order. Only used to
/// synthesise test poses; no dataset average is bundled.
std::array<double, kNumBones> nominal_bone_lengths();

struct PoseSamplerOptions {
  double length_jitter = 0.1;   // each bone scaled by 1 +/- jitter
  double max_tilt_deg = 20.0;   // torso lean away from vertical
  double max_head_tilt_deg = 30.0;
  double max_leg_rise = 0.3;    // upper bound on a leg bone's z component
};

/// Upright torso with a random yaw and lean, random limb directions. The
/// neck is at the origin.
Pose sample_pose(std::mt19937_64& rng, const PoseSamplerOptions& options = {});

}  // namespace abstractpose
