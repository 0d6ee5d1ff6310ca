#include "abstractpose/environment.hpp"

#include <cmath>
#include <string>

#include <Eigen/Geometry>

namespace abstractpose {

void CameraIntrinsics::validate() const {
  if (!(focal_length > 0.0)) fail(ErrorCode::kInvalidArgument, "focal_length must be > 0");
  if (width <= 0 || height <= 0) fail(ErrorCode::kInvalidArgument, "image size must be positive");
  if (!(principal_point.x() >= 0.0 && principal_point.x() <= width &&
        principal_point.y() >= 0.0 && principal_point.y() <= height)) {
    fail(ErrorCode::kInvalidArgument, "principal point outside image bounds");
  }
}

void EnvConfig::validate() const {
  if (grid_cols < 1 || grid_rows < 1) fail(ErrorCode::kInvalidArgument, "grid must be at least 1x1");
  if (!(radius_mm > 0.0)) fail(ErrorCode::kInvalidArgument, "radius must be > 0");
  if (!(fixed_point_scale > 0.0 && fixed_point_scale < 0.5)) {
    fail(ErrorCode::kInvalidArgument, "fixed_point_scale must lie in (0, 0.5)");
  }
  if (heatmap_size < 1) fail(ErrorCode::kInvalidArgument, "heatmap_size must be positive");
  if (seam_row_first < 0 || seam_row_last >= heatmap_size || seam_row_first > seam_row_last) {
    fail(ErrorCode::kInvalidArgument, "seam_row_span must fit inside [0, heatmap_size)");
  }
  if (seam_row_last - seam_row_first + 1 < grid_rows) {
    fail(ErrorCode::kInvalidArgument, "seam_row_span holds fewer rows than grid_rows");
  }
  if (grid_cols > heatmap_size) {
    fail(ErrorCode::kInvalidArgument, "grid_cols exceeds the viewpoint heatmap width");
  }
  if (!(elevation_min_deg > -90.0 && elevation_max_deg < 90.0 &&
        elevation_min_deg <= elevation_max_deg)) {
    fail(ErrorCode::kInvalidArgument, "elevation band must lie strictly inside (-90, 90)");
  }
  intrinsics.validate();
}

double EnvConfig::azimuth_step_rad() const { return 2.0 * kPi / grid_cols; }

Mat3 look_rotation(const Vec3& look) {
  const double norm = look.norm();
  if (!(norm > 0.0)) fail(ErrorCode::kDegenerate, "zero-length look vector");
  const Vec3 z = look / norm;
  const Vec3 down = -Vec3::UnitZ();
  Vec3 x = down.cross(z);
  if (x.norm() < 1e-9) fail(ErrorCode::kDegenerate, "look vector parallel to the vertical axis");
  x.normalize();
  const Vec3 y = z.cross(x).normalized();
  // Re-derive x so the triple is orthonormal to machine precision.
  x = y.cross(z).normalized();
  Mat3 r;
  r.col(0) = x;
  r.col(1) = y;
  r.col(2) = z;
  return r;
}

SyntheticEnvironment::SyntheticEnvironment(const EnvConfig& config) : config_(config) {
  config_.validate();
  const int cols = config_.grid_cols;
  const int rows = config_.grid_rows;
  positions_.resize(static_cast<std::size_t>(cols * rows));
  rotations_.resize(positions_.size());

  const double step = config_.azimuth_step_rad();
  for (int i = 0; i < cols; ++i) {
    const double az = step * i;
    for (int j = 0; j < rows; ++j) {
      const double el_deg =
          rows == 1 ? 0.5 * (config_.elevation_min_deg + config_.elevation_max_deg)
                    : config_.elevation_min_deg +
                          (config_.elevation_max_deg - config_.elevation_min_deg) * j / (rows - 1);
      const double el = deg_to_rad(el_deg);
      positions_[slot({i, j})] = config_.radius_mm *
                                 Vec3(std::cos(el) * std::cos(az), std::cos(el) * std::sin(az),
                                      std::sin(el));
    }
  }

  Vec3 sum = Vec3::Zero();
  for (const Vec3& t : positions_) sum += t;
  fixed_point_ = config_.fixed_point_scale / static_cast<double>(cols * rows) * sum;

  for (int i = 0; i < cols; ++i) {
    for (int j = 0; j < rows; ++j) {
      const std::size_t s = slot({i, j});
      try {
        rotations_[s] = look_rotation(fixed_point_ - positions_[s]);
      } catch (const Error&) {
        fail(ErrorCode::kDegenerate, "camera (" + std::to_string(i) + ", " + std::to_string(j) +
                                         ") looks straight along the vertical axis");
      }
    }
  }
}

bool SyntheticEnvironment::contains(CameraIndex index) const {
  return index.col >= 0 && index.col < cols() && index.row >= 0 && index.row < rows();
}

std::size_t SyntheticEnvironment::slot(CameraIndex index) const {
  if (!contains(index)) {
    fail(ErrorCode::kOutOfRange, "camera index (" + std::to_string(index.col) + ", " +
                                     std::to_string(index.row) + ") outside the rig");
  }
  return static_cast<std::size_t>(index.col * rows() + index.row);
}

const Vec3& SyntheticEnvironment::position(CameraIndex index) const {
  return positions_[slot(index)];
}

const Mat3& SyntheticEnvironment::rotation(CameraIndex index) const {
  return rotations_[slot(index)];
}

Vec3 SyntheticEnvironment::to_camera(CameraIndex index, const Vec3& world) const {
  const std::size_t s = slot(index);
  return rotations_[s].transpose() * (world - positions_[s]);
}

SyntheticEnvironment build_environment(const EnvConfig& config) {
  return SyntheticEnvironment(config);
}

const Mat3& camera_rotation(const SyntheticEnvironment& env, int col, int row) {
  return env.rotation({col, row});
}

}  // namespace abstractpose
