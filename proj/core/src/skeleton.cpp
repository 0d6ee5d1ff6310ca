#include "abstractpose/skeleton.hpp"

#include <cmath>
#include <string>

namespace abstractpose {
namespace {

constexpr std::array<std::string_view, kNumJoints> kJointNames = {
    "head",      "neck",      "right_shoulder", "right_elbow", "right_wrist",
    "left_shoulder", "left_elbow", "left_wrist", "right_hip", "right_knee",
    "right_ankle", "left_hip", "left_knee",     "left_ankle",
};

constexpr std::array<std::string_view, kMaxParts> kPartNames = {
    "torso",     "left_upper_arm", "left_forearm", "right_upper_arm", "right_forearm",
    "left_thigh", "left_shin",     "right_thigh",  "right_shin",      "head",
};

constexpr std::array<Bone, kNumBones> kBones = {{
    {Joint::kHead, Joint::kNeck},
    {Joint::kRightShoulder, Joint::kNeck},
    {Joint::kRightElbow, Joint::kRightShoulder},
    {Joint::kRightWrist, Joint::kRightElbow},
    {Joint::kLeftShoulder, Joint::kNeck},
    {Joint::kLeftElbow, Joint::kLeftShoulder},
    {Joint::kLeftWrist, Joint::kLeftElbow},
    {Joint::kRightHip, Joint::kNeck},
    {Joint::kRightKnee, Joint::kRightHip},
    {Joint::kRightAnkle, Joint::kRightKnee},
    {Joint::kLeftHip, Joint::kNeck},
    {Joint::kLeftKnee, Joint::kLeftHip},
    {Joint::kLeftAnkle, Joint::kLeftKnee},
}};

constexpr std::array<Part, kNumBones> kBoneParts = {
    Part::kTorso,        Part::kTorso,     Part::kRightUpperArm, Part::kRightForearm,
    Part::kTorso,        Part::kLeftUpperArm, Part::kLeftForearm, Part::kTorso,
    Part::kRightThigh,   Part::kRightShin, Part::kTorso,         Part::kLeftThigh,
    Part::kLeftShin,
};

}  // namespace

std::string_view joint_name(Joint joint) {
  return kJointNames[static_cast<std::size_t>(index_of(joint))];
}

std::optional<Joint> joint_from_name(std::string_view name) {
  for (int i = 0; i < kNumJoints; ++i) {
    if (kJointNames[static_cast<std::size_t>(i)] == name) return static_cast<Joint>(i);
  }
  return std::nullopt;
}

std::string_view part_name(Part part) { return kPartNames[static_cast<std::size_t>(index_of(part))]; }

std::optional<Part> part_from_name(std::string_view name) {
  for (int i = 0; i < kMaxParts; ++i) {
    if (kPartNames[static_cast<std::size_t>(i)] == name) return static_cast<Part>(i);
  }
  return std::nullopt;
}

std::optional<Joint> parent_of(Joint joint) {
  if (joint == kRootJoint) return std::nullopt;
  for (const Bone& b : kBones) {
    if (b.child == joint) return b.parent;
  }
  return std::nullopt;
}

const std::array<Bone, kNumBones>& bone_order() { return kBones; }

Part part_of_bone(int bone, bool separate_head) {
  if (bone < 0 || bone >= kNumBones) fail(ErrorCode::kOutOfRange, "bone index out of range");
  if (bone == 0 && separate_head) return Part::kHead;
  return kBoneParts[static_cast<std::size_t>(bone)];
}

std::optional<int> bone_of_part(Part part) {
  switch (part) {
    case Part::kTorso: return std::nullopt;
    case Part::kHead: return 0;
    case Part::kRightUpperArm: return 2;
    case Part::kRightForearm: return 3;
    case Part::kLeftUpperArm: return 5;
    case Part::kLeftForearm: return 6;
    case Part::kRightThigh: return 8;
    case Part::kRightShin: return 9;
    case Part::kLeftThigh: return 11;
    case Part::kLeftShin: return 12;
  }
  return std::nullopt;
}

Pose Pose::translated(const Vec3& offset) const {
  Pose out = *this;
  for (Vec3& p : out.joints) p += offset;
  return out;
}

Pose Pose::transformed(const Mat3& rotation, const Vec3& translation) const {
  Pose out = *this;
  for (Vec3& p : out.joints) p = rotation * p + translation;
  return out;
}

Pose Pose::scaled(double factor) const {
  Pose out = *this;
  for (Vec3& p : out.joints) p *= factor;
  return out;
}

void validate_pose(const Pose& pose, double min_bone_mm) {
  for (int j = 0; j < kNumJoints; ++j) {
    if (!pose.joints[static_cast<std::size_t>(j)].allFinite()) {
      fail(ErrorCode::kInvalidArgument,
           "non-finite coordinate at joint " + std::string(joint_name(static_cast<Joint>(j))));
    }
  }
  for (const Bone& b : kBones) {
    if ((pose[b.child] - pose[b.parent]).norm() <= min_bone_mm) {
      fail(ErrorCode::kDegenerate, "bone " + std::string(joint_name(b.parent)) + "->" +
                                       std::string(joint_name(b.child)) + " is degenerate");
    }
  }
}

BoneDecomposition decompose_pose(const Pose& pose) {
  validate_pose(pose);
  BoneDecomposition out;
  for (std::size_t k = 0; k < kBones.size(); ++k) {
    const Vec3 v = pose[kBones[k].child] - pose[kBones[k].parent];
    out.lengths[k] = v.norm();
    out.directions[k] = v / out.lengths[k];
  }
  return out;
}

Pose compose_pose(std::span<const Vec3> directions, std::span<const double> lengths,
                  const Vec3& root_position) {
  if (directions.size() != kNumBones || lengths.size() != kNumBones) {
    fail(ErrorCode::kInvalidArgument, "expected 13 bone directions and 13 lengths");
  }
  Pose out;
  out[kRootJoint] = root_position;
  // kBones is already in DFS order, so every parent is placed before its child.
  for (std::size_t k = 0; k < kBones.size(); ++k) {
    out[kBones[k].child] = out[kBones[k].parent] + lengths[k] * directions[k];
  }
  return out;
}

Pose compose_pose(const BoneDecomposition& bones, const Vec3& root_position) {
  return compose_pose(bones.directions, bones.lengths, root_position);
}

Vec3 hip_center(const Pose& pose) {
  return 0.5 * (pose[Joint::kLeftHip] + pose[Joint::kRightHip]);
}

Vec3 shoulder_center(const Pose& pose) {
  return 0.5 * (pose[Joint::kLeftShoulder] + pose[Joint::kRightShoulder]);
}

Vec3 forward_vector(const Pose& pose) {
  constexpr double kEps = 1e-9;
  Vec3 right = pose[Joint::kRightHip] - pose[Joint::kLeftHip];
  if (right.norm() < 1e-6) right = pose[Joint::kRightShoulder] - pose[Joint::kLeftShoulder];
  if (right.norm() < 1e-6) fail(ErrorCode::kDegenerate, "hips and shoulders are coincident");
  const Vec3 up = pose[Joint::kNeck] - hip_center(pose);
  if (up.norm() < 1e-6) fail(ErrorCode::kDegenerate, "neck coincides with hip centre");
  const Vec3 f = up.normalized().cross(right.normalized());
  if (f.norm() < kEps) fail(ErrorCode::kDegenerate, "spine parallel to the hip axis");
  return f.normalized();
}

}  // namespace abstractpose
