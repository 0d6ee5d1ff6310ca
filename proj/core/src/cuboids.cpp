#include "abstractpose/cuboid.hpp"

#include <algorithm>
#include <cmath>

namespace abstractpose {
namespace {

Cuboid box_from_frame(const Vec3& base, const Vec3& axis, const Vec3& s1, const Vec3& s2,
                      double h1, double h2) {
  Cuboid c;
  for (int k = 0; k < 8; ++k) {
    const double a1 = (k & 1) ? h1 : -h1;
    const double a2 = (k & 2) ? h2 : -h2;
    c[static_cast<std::size_t>(k)] = base + ((k & 4) ? axis : Vec3::Zero()) + a1 * s1 + a2 * s2;
  }
  return c;
}

}  // namespace

Cuboid limb_cuboid(const Vec3& a, const Vec3& b, double half_width, const Vec3& reference,
                   const Vec3& fallback_reference) {
  if (!(half_width > 0.0)) fail(ErrorCode::kInvalidArgument, "limb half width must be > 0");
  const Vec3 axis = b - a;
  const double length = axis.norm();
  if (!(length > 1.0)) fail(ErrorCode::kDegenerate, "limb shorter than 1 mm");
  const Vec3 u = axis / length;

  Vec3 ref = reference.normalized();
  if (std::abs(u.dot(ref)) > 0.999) ref = fallback_reference.normalized();
  Vec3 s1 = u.cross(ref);
  if (s1.norm() < 1e-9) fail(ErrorCode::kDegenerate, "limb parallel to both reference axes");
  s1.normalize();
  const Vec3 s2 = u.cross(s1).normalized();
  return box_from_frame(a, axis, s1, s2, half_width, half_width);
}

Cuboid torso_cuboid(const Pose& pose, double depth) {
  if (depth < 0.0) fail(ErrorCode::kInvalidArgument, "torso depth must be >= 0");
  const Vec3 forward = forward_vector(pose);
  const Vec3 hips = hip_center(pose);
  const Vec3 shoulders = shoulder_center(pose);
  const Vec3 up = (pose[Joint::kNeck] - hips).normalized();
  const Vec3 right = forward.cross(up).normalized();
  // forward is already orthogonal to up (it is built from up x right).
  const Vec3 fwd = up.cross(right).normalized();

  double bottom = hips.dot(up);
  double top = shoulders.dot(up);
  if (top - bottom < 1.0) top = pose[Joint::kNeck].dot(up);

  const double shoulder_span =
      std::abs((pose[Joint::kRightShoulder] - pose[Joint::kLeftShoulder]).dot(right));
  const double hip_span = std::abs((pose[Joint::kRightHip] - pose[Joint::kLeftHip]).dot(right));
  const double half_width = 0.5 * std::max(shoulder_span, hip_span);

  const Vec3 mid = 0.5 * (hips + shoulders);
  const Vec3 base = mid.dot(right) * right + bottom * up + mid.dot(fwd) * fwd;
  return box_from_frame(base, (top - bottom) * up, right, fwd, half_width, 0.5 * depth);
}

Vec3 cuboid_center(const Cuboid& box) {
  Vec3 c = Vec3::Zero();
  for (const Vec3& p : box) c += p;
  return c / 8.0;
}

std::array<Vec3, 3> cuboid_edges(const Cuboid& box) {
  return {box[1] - box[0], box[2] - box[0], box[4] - box[0]};
}

double cuboid_volume(const Cuboid& box) {
  const auto e = cuboid_edges(box);
  return std::abs(e[0].dot(e[1].cross(e[2])));
}

}  // namespace abstractpose
