#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "abstractpose/common.hpp"

namespace abstractpose {

inline constexpr int kNumJoints = 14;
inline constexpr int kNumBones = 13;

// Ordered for a depth-first walk from the neck, children visited in enum
// order. Bone 0 is neck -> head; every other bone b has child joint b + 1.
enum class Joint : int {
  kHead = 0,
  kNeck,
  kRightShoulder,
  kRightElbow,
  kRightWrist,
  kLeftShoulder,
  kLeftElbow,
  kLeftWrist,
  kRightHip,
  kRightKnee,
  kRightAnkle,
  kLeftHip,
  kLeftKnee,
  kLeftAnkle,
};

inline constexpr Joint kRootJoint = Joint::kNeck;

constexpr int index_of(Joint j) { return static_cast<int>(j); }

struct Bone {
  Joint child;
  Joint parent;
};

/// Render parts. The first nine are always present; kHead is only used when
/// the head is rendered as its own part instead of joining the torso colour.
enum class Part : int {
  kTorso = 0,
  kLeftUpperArm,
  kLeftForearm,
  kRightUpperArm,
  kRightForearm,
  kLeftThigh,
  kLeftShin,
  kRightThigh,
  kRightShin,
  kHead,
};

inline constexpr int kNumBodyParts = 9;
inline constexpr int kMaxParts = 10;

constexpr int index_of(Part p) { return static_cast<int>(p); }

std::string_view joint_name(Joint joint);
std::optional<Joint> joint_from_name(std::string_view name);
std::string_view part_name(Part part);
std::optional<Part> part_from_name(std::string_view name);

/// Parent of every non-root joint; nullopt for the root.
std::optional<Joint> parent_of(Joint joint);

/// The 13 bones in encoding order (tree DFS from the neck).
const std::array<Bone, kNumBones>& bone_order();

/// Part a bone is painted with. Neck->Head maps to the torso unless
/// `separate_head` is set.
Part part_of_bone(int bone, bool separate_head = false);

/// Parts whose two defining joints are a single bone (limbs, optional head).
std::optional<int> bone_of_part(Part part);

/// 14 joints in world or camera coordinates, millimetres.
struct Pose {
  std::array<Vec3, kNumJoints> joints;

  Vec3& operator[](Joint j) { return joints[static_cast<std::size_t>(index_of(j))]; }
  const Vec3& operator[](Joint j) const { return joints[static_cast<std::size_t>(index_of(j))]; }

  const Vec3& root() const { return (*this)[kRootJoint]; }

  Pose translated(const Vec3& offset) const;
  /// p -> rotation * p + translation for every joint.
  Pose transformed(const Mat3& rotation, const Vec3& translation = Vec3::Zero()) const;
  Pose scaled(double factor) const;
  Pose root_centered() const { return translated(-root()); }
};

/// Throws kInvalidArgument on non-finite coordinates and kDegenerate on any
/// bone shorter than `min_bone_mm`.
void validate_pose(const Pose& pose, double min_bone_mm = 1.0);

struct BoneDecomposition {
  std::array<Vec3, kNumBones> directions;  // unit vectors, child - parent
  std::array<double, kNumBones> lengths;   // mm
};

BoneDecomposition decompose_pose(const Pose& pose);

Pose compose_pose(const BoneDecomposition& bones, const Vec3& root_position = Vec3::Zero());

/// Same traversal with directions and lengths supplied separately.
Pose compose_pose(std::span<const Vec3> directions, std::span<const double> lengths,
                  const Vec3& root_position = Vec3::Zero());

/// Facing direction of the subject: unit(up x right) with
/// right = RightHip - LeftHip (shoulders when the hips coincide) and
/// up = Neck - midpoint(hips).
Vec3 forward_vector(const Pose& pose);

Vec3 hip_center(const Pose& pose);
Vec3 shoulder_center(const Pose& pose);

}  // namespace abstractpose
