#pragma once

#include <compare>
#include <vector>

#include "abstractpose/common.hpp"

namespace abstractpose {

struct CameraIntrinsics {
  double focal_length = 280.0;  // pixels
  Vec2 principal_point{128.0, 128.0};
  int width = 256;
  int height = 256;

  void validate() const;
};

/// Camera rig layout. Cameras sit on a sphere centred at the world origin,
/// `grid_cols` azimuth steps over [0, 2pi) by `grid_rows` elevation steps
/// spread uniformly over [elevation_min_deg, elevation_max_deg].
struct EnvConfig {
  int grid_cols = 64;
  int grid_rows = 5;
  double radius_mm = 5569.0;
  double fixed_point_scale = 0.4;
  int seam_row_first = 25;  // inclusive
  int seam_row_last = 30;   // inclusive
  int heatmap_size = 64;
  double elevation_min_deg = 10.0;
  double elevation_max_deg = 70.0;
  CameraIntrinsics intrinsics;

  void validate() const;
  double azimuth_step_rad() const;
};

/// (column, row) = (azimuth index, elevation index).
struct CameraIndex {
  int col = 0;
  int row = 0;

  auto operator<=>(const CameraIndex&) const = default;
};

/// Immutable camera rig. Rotation matrices store the camera axes as columns
/// (x right, y down, z = look), so `R.transpose() * v` maps a world
/// direction into the camera frame.
class SyntheticEnvironment {
 public:
  explicit SyntheticEnvironment(const EnvConfig& config);

  const EnvConfig& config() const { return config_; }
  const CameraIntrinsics& intrinsics() const { return config_.intrinsics; }
  int cols() const { return config_.grid_cols; }
  int rows() const { return config_.grid_rows; }
  int camera_count() const { return cols() * rows(); }

  bool contains(CameraIndex index) const;
  const Vec3& position(CameraIndex index) const;
  const Mat3& rotation(CameraIndex index) const;
  Vec3 forward(CameraIndex index) const { return rotation(index).col(2); }
  const Vec3& fixed_point() const { return fixed_point_; }

  /// Expresses a world point in the frame of camera `index`.
  Vec3 to_camera(CameraIndex index, const Vec3& world) const;

 private:
  std::size_t slot(CameraIndex index) const;

  EnvConfig config_;
  std::vector<Vec3> positions_;
  std::vector<Mat3> rotations_;
  Vec3 fixed_point_ = Vec3::Zero();
};

SyntheticEnvironment build_environment(const EnvConfig& config);

/// Bounds-checked rotation lookup.
const Mat3& camera_rotation(const SyntheticEnvironment& env, int col, int row);

/// Look-at frame with the -z world axis as the "down" seed.
/// Throws kDegenerate when `look` is (anti)parallel to the world z axis.
Mat3 look_rotation(const Vec3& look);

}  // namespace abstractpose
