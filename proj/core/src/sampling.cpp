#include "abstractpose/sampling.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>

namespace abstractpose {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 frame_rng(std::uint64_t seed, std::uint64_t frame) {
  return std::mt19937_64(splitmix64(seed ^ (frame * 0x9E3779B97F4A7C15ULL)));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int uniform_index(std::mt19937_64& rng, int n) {
  if (n <= 0) fail(ErrorCode::kInvalidArgument, "uniform_index needs n > 0");
  const int k = static_cast<int>(uniform01(rng) * n);
  return k < n ? k : n - 1;
}

Vec3 sample_unit_vector(std::mt19937_64& rng) {
  const double z = 2.0 * uniform01(rng) - 1.0;
  const double a = 2.0 * kPi * uniform01(rng);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(a), r * std::sin(a), z};
}

Mat3 sample_rotation(std::mt19937_64& rng) {
  // Shoemake's subgroup algorithm.
  const double u1 = uniform01(rng);
  const double u2 = 2.0 * kPi * uniform01(rng);
  const double u3 = 2.0 * kPi * uniform01(rng);
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  const Eigen::Quaterniond q(b * std::cos(u3), a * std::sin(u2), a * std::cos(u2), b * std::sin(u3));
  return q.normalized().toRotationMatrix();
}

CameraIndex sample_camera(std::mt19937_64& rng, const SyntheticEnvironment& env) {
  const int col = uniform_index(rng, env.cols());
  const int row = uniform_index(rng, env.rows());
  return {col, row};
}

std::array<double, kNumBones> nominal_bone_lengths() {
  return {
      200.0,  // neck -> head
      180.0,  // neck -> right shoulder
      280.0,  // right upper arm
      250.0,  // right forearm
      180.0,  // neck -> left shoulder
      280.0,  // left upper arm
      250.0,  // left forearm
      520.0,  // neck -> right hip
      450.0,  // right thigh
      430.0,  // right shin
      520.0,  // neck -> left hip
      450.0,  // left thigh
      430.0,  // left shin
  };
}

namespace {

Mat3 tilt(std::mt19937_64& rng, double max_deg) {
  const double axis_angle = 2.0 * kPi * uniform01(rng);
  const double angle = deg_to_rad(max_deg) * uniform01(rng);
  const Vec3 axis(std::cos(axis_angle), std::sin(axis_angle), 0.0);
  return Eigen::AngleAxisd(angle, axis).toRotationMatrix();
}

Vec3 sample_leg_direction(std::mt19937_64& rng, double max_rise) {
  for (;;) {
    const Vec3 v = sample_unit_vector(rng);
    if (v.z() <= max_rise) return v;
  }
}

}  // namespace

Pose sample_pose(std::mt19937_64& rng, const PoseSamplerOptions& options) {
  auto lengths = nominal_bone_lengths();
  for (double& l : lengths) l *= 1.0 + options.length_jitter * (2.0 * uniform01(rng) - 1.0);

  const Mat3 body = Eigen::AngleAxisd(2.0 * kPi * uniform01(rng), Vec3::UnitZ()).toRotationMatrix() *
                    tilt(rng, options.max_tilt_deg);

  // Body frame: +x = subject's right, +y = forward, +z = up.
  std::array<Vec3, kNumBones> dirs;
  dirs[0] = tilt(rng, options.max_head_tilt_deg) * Vec3::UnitZ();
  dirs[1] = Vec3(1.0, 0.0, -0.15).normalized();
  dirs[4] = Vec3(-1.0, 0.0, -0.15).normalized();
  dirs[7] = Vec3(0.2, 0.0, -1.0).normalized();
  dirs[10] = Vec3(-0.2, 0.0, -1.0).normalized();
  for (std::size_t k : {0u, 1u, 4u, 7u, 10u}) dirs[k] = body * dirs[k];
  // Limbs are sampled directly in the world frame.
  for (std::size_t k : {2u, 3u, 5u, 6u}) dirs[k] = sample_unit_vector(rng);
  for (std::size_t k : {8u, 9u, 11u, 12u}) dirs[k] = sample_leg_direction(rng, options.max_leg_rise);

  return compose_pose(dirs, lengths);
}

}  // namespace abstractpose
