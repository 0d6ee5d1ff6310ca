#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "abstractpose/skeleton.hpp"

namespace abstractpose {

/// Rotation (det +1) minimising sum |R s_i - t_i|^2. Points are used as
/// given, no centring.
Mat3 optimal_rotation(std::span<const Vec3> source, std::span<const Vec3> target);

struct Similarity {
  double scale = 1.0;
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return scale * (rotation * p) + translation; }
};

/// Least-squares similarity mapping source onto target. Throws kDegenerate
/// when all source points coincide.
Similarity optimal_similarity(std::span<const Vec3> source, std::span<const Vec3> target);

/// Mean joint distance after translating both poses to put the root at the
/// origin.
double mpjpe(const Pose& pred, const Pose& gt);

/// Root-centred, then the prediction is rotated about the root by the
/// least-squares rotation.
double rotation_aligned_mpjpe(const Pose& pred, const Pose& gt);

/// Full similarity (rotation, isotropic scale, translation) alignment.
double pa_mpjpe(const Pose& pred, const Pose& gt);

struct PoseErrors {
  double mpjpe = 0.0;
  double pa_mpjpe = 0.0;
  double rot_mpjpe = 0.0;
  std::array<double, kNumJoints> per_joint_rot{};  // after rotation alignment

  bool operator==(const PoseErrors&) const = default;
};

PoseErrors evaluate_pose(const Pose& pred, const Pose& gt);

struct FrameErrors {
  std::size_t frame = 0;
  PoseErrors errors;

  bool operator==(const FrameErrors&) const = default;
};

struct SkippedFrame {
  std::size_t frame = 0;
  std::string reason;

  bool operator==(const SkippedFrame&) const = default;
};

/// Per-frame errors plus their mean.
struct EvalReport {
  std::vector<FrameErrors> frames;
  std::vector<SkippedFrame> skipped;
  PoseErrors aggregate;

  bool operator==(const EvalReport&) const = default;
};

/// Sorts frames by index and fills in the aggregate.
EvalReport summarize(std::vector<FrameErrors> frames, std::vector<SkippedFrame> skipped = {});

}  // namespace abstractpose
