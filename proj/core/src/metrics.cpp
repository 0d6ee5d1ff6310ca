#include "abstractpose/metrics.hpp"

#include <algorithm>

#include <Eigen/SVD>

namespace abstractpose {
namespace {

std::array<Vec3, kNumJoints> centered(const Pose& p, const Vec3& origin) {
  std::array<Vec3, kNumJoints> out;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = p.joints[j] - origin;
  return out;
}

void require_same_size(std::span<const Vec3> a, std::span<const Vec3> b) {
  if (a.size() != b.size() || a.empty()) {
    fail(ErrorCode::kInvalidArgument, "point sets must be non-empty and of equal size");
  }
}

// Kabsch: H = sum s t^T = U S V^T, R = V diag(1, 1, d) U^T.
struct KabschResult {
  Mat3 rotation;
  double trace_ds;
};

KabschResult kabsch(std::span<const Vec3> source, std::span<const Vec3> target) {
  Mat3 h = Mat3::Zero();
  for (std::size_t i = 0; i < source.size(); ++i) h += source[i] * target[i].transpose();
  Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3& u = svd.matrixU();
  const Mat3& v = svd.matrixV();
  const double d = (v * u.transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  Mat3 correction = Mat3::Identity();
  correction(2, 2) = d;
  const Vec3 s = svd.singularValues();
  return {v * correction * u.transpose(), s(0) + s(1) + d * s(2)};
}

}  // namespace

Mat3 optimal_rotation(std::span<const Vec3> source, std::span<const Vec3> target) {
  require_same_size(source, target);
  return kabsch(source, target).rotation;
}

Similarity optimal_similarity(std::span<const Vec3> source, std::span<const Vec3> target) {
  require_same_size(source, target);
  const auto n = static_cast<double>(source.size());
  Vec3 ms = Vec3::Zero();
  Vec3 mt = Vec3::Zero();
  for (std::size_t i = 0; i < source.size(); ++i) {
    ms += source[i];
    mt += target[i];
  }
  ms /= n;
  mt /= n;
  std::vector<Vec3> s(source.size());
  std::vector<Vec3> t(target.size());
  double var = 0.0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    s[i] = source[i] - ms;
    t[i] = target[i] - mt;
    var += s[i].squaredNorm();
  }
  if (var < 1e-18) fail(ErrorCode::kDegenerate, "all source points coincide");
  const KabschResult k = kabsch(s, t);
  Similarity out;
  out.rotation = k.rotation;
  out.scale = k.trace_ds / var;
  out.translation = mt - out.scale * (out.rotation * ms);
  return out;
}

double mpjpe(const Pose& pred, const Pose& gt) {
  const auto p = centered(pred, pred.root());
  const auto g = centered(gt, gt.root());
  double sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) sum += (p[j] - g[j]).norm();
  return sum / kNumJoints;
}

PoseErrors evaluate_pose(const Pose& pred, const Pose& gt) {
  PoseErrors out;
  out.mpjpe = mpjpe(pred, gt);

  const auto p = centered(pred, pred.root());
  const auto g = centered(gt, gt.root());
  const Mat3 r = optimal_rotation(p, g);
  double sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    out.per_joint_rot[j] = (r * p[j] - g[j]).norm();
    sum += out.per_joint_rot[j];
  }
  out.rot_mpjpe = sum / kNumJoints;

  const Similarity sim = optimal_similarity(pred.joints, gt.joints);
  sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) sum += (sim.apply(pred.joints[j]) - gt.joints[j]).norm();
  out.pa_mpjpe = sum / kNumJoints;
  return out;
}

double rotation_aligned_mpjpe(const Pose& pred, const Pose& gt) {
  const auto p = centered(pred, pred.root());
  const auto g = centered(gt, gt.root());
  const Mat3 r = optimal_rotation(p, g);
  double sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) sum += (r * p[j] - g[j]).norm();
  return sum / kNumJoints;
}

double pa_mpjpe(const Pose& pred, const Pose& gt) {
  const Similarity sim = optimal_similarity(pred.joints, gt.joints);
  double sum = 0.0;
  for (std::size_t j = 0; j < pred.joints.size(); ++j) {
    sum += (sim.apply(pred.joints[j]) - gt.joints[j]).norm();
  }
  return sum / kNumJoints;
}

EvalReport summarize(std::vector<FrameErrors> frames, std::vector<SkippedFrame> skipped) {
  EvalReport report;
  std::sort(frames.begin(), frames.end(),
            [](const FrameErrors& a, const FrameErrors& b) { return a.frame < b.frame; });
  std::sort(skipped.begin(), skipped.end(),
            [](const SkippedFrame& a, const SkippedFrame& b) { return a.frame < b.frame; });
  if (!frames.empty()) {
    PoseErrors& agg = report.aggregate;
    for (const FrameErrors& f : frames) {
      agg.mpjpe += f.errors.mpjpe;
      agg.pa_mpjpe += f.errors.pa_mpjpe;
      agg.rot_mpjpe += f.errors.rot_mpjpe;
      for (std::size_t j = 0; j < agg.per_joint_rot.size(); ++j) {
        agg.per_joint_rot[j] += f.errors.per_joint_rot[j];
      }
    }
    const auto n = static_cast<double>(frames.size());
    agg.mpjpe /= n;
    agg.pa_mpjpe /= n;
    agg.rot_mpjpe /= n;
    for (double& v : agg.per_joint_rot) v /= n;
  }
  report.frames = std::move(frames);
  report.skipped = std::move(skipped);
  return report;
}

}  // namespace abstractpose
