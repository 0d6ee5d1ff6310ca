#include "abstractpose/viewpoint_codec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace abstractpose {

void CodecParams::validate(int map_size) const {
  if (!(sigma > 0.0)) fail(ErrorCode::kInvalidArgument, "sigma must be > 0");
  if (kernel_width <= 0 || kernel_width > map_size) {
    fail(ErrorCode::kInvalidArgument, "kernel width must lie in (0, " + std::to_string(map_size) + "]");
  }
  if (pose_map_size <= 0) fail(ErrorCode::kInvalidArgument, "pose_map_size must be positive");
}

CameraIndexPermutation::CameraIndexPermutation(const SyntheticEnvironment& env, int shift)
    : shift_(wrap_index(shift, env.cols())), cols_(env.cols()), rows_(env.rows()) {
  positions_.reserve(static_cast<std::size_t>(env.camera_count()));
  rotations_.reserve(positions_.capacity());
  for (int k = 0; k < cols_; ++k) {
    for (int j = 0; j < rows_; ++j) {
      const CameraIndex original = to_original({k, j});
      positions_.push_back(env.position(original));
      rotations_.push_back(env.rotation(original));
    }
  }
}

CameraIndex CameraIndexPermutation::to_rotated(CameraIndex original) const {
  return {wrap_index(original.col - shift_, cols_), original.row};
}

CameraIndex CameraIndexPermutation::to_original(CameraIndex rotated) const {
  return {wrap_index(rotated.col + shift_, cols_), rotated.row};
}

std::size_t CameraIndexPermutation::slot(CameraIndex rotated) const {
  if (rotated.col < 0 || rotated.col >= cols_ || rotated.row < 0 || rotated.row >= rows_) {
    fail(ErrorCode::kOutOfRange, "rotated camera index outside the rig");
  }
  return static_cast<std::size_t>(rotated.col * rows_ + rotated.row);
}

const Vec3& CameraIndexPermutation::position(CameraIndex rotated) const {
  return positions_[slot(rotated)];
}

const Mat3& CameraIndexPermutation::rotation(CameraIndex rotated) const {
  return rotations_[slot(rotated)];
}

CameraIndexPermutation rotate_camera_array(const SyntheticEnvironment& env,
                                           const Vec3& subject_forward) {
  const Vec3 z = Vec3::UnitZ();
  const Vec3 planar = subject_forward - subject_forward.dot(z) * z;
  if (planar.norm() < 1e-6) fail(ErrorCode::kDegenerate, "subject forward vector is vertical");

  // Every row of a column shares its azimuth, so row 0 stands in for the column.
  int best = 0;
  double best_dot = -2.0;
  for (int i = 0; i < env.cols(); ++i) {
    Vec3 f = env.forward({i, 0});
    f.z() = 0.0;
    const double d = f.normalized().dot(planar);
    if (d > best_dot) {
      best_dot = d;
      best = i;
    }
  }
  return CameraIndexPermutation(env, best);
}

Heatmap encode_viewpoint(CameraIndex rotated_index, const CodecParams& params,
                         const EnvConfig& config) {
  const int size = config.heatmap_size;
  params.validate(size);
  if (rotated_index.col < 0 || rotated_index.col >= config.grid_cols || rotated_index.row < 0 ||
      rotated_index.row >= config.grid_rows) {
    fail(ErrorCode::kOutOfRange, "viewpoint index outside the rig");
  }
  const int mu_x = rotated_index.col;
  const int mu_y = config.seam_row_first + rotated_index.row;
  const int wk = params.kernel_width;

  Heatmap map(1, size, size);
  for (int i = 0; i < size; ++i) {
    if (std::abs(i - mu_y) >= wk) continue;
    for (int j = 0; j < size; ++j) {
      double x = 0.0;
      if (std::abs(mu_x - j) < wk) {
        x = j;
      } else if (std::abs(j - size - mu_x) < wk) {
        x = j - size;
      } else if (std::abs(mu_x - size - j) < wk) {
        x = j + size;
      } else {
        continue;
      }
      map.at(0, i, j) = static_cast<float>(gaussian(x - mu_x, i - mu_y, params.sigma));
    }
  }
  return map;
}

CameraIndex decode_viewpoint(const Heatmap& map, const EnvConfig& config) {
  if (map.channels() != 1 || map.rows() != config.heatmap_size || map.cols() != config.heatmap_size) {
    fail(ErrorCode::kInvalidArgument, "viewpoint heatmap has the wrong shape");
  }
  const Peak peak = find_peak(map, 0);
  const CameraIndex index{peak.col, peak.row - config.seam_row_first};
  if (index.col >= config.grid_cols || index.row < 0 || index.row >= config.grid_rows) {
    fail(ErrorCode::kNoDetection, "viewpoint peak outside the camera band");
  }
  return index;
}

double refine_viewpoint_column(const Heatmap& map, const CodecParams& params,
                               const EnvConfig& config) {
  const CameraIndex index = decode_viewpoint(map, config);
  const int size = config.heatmap_size;
  const int row = config.seam_row_first + index.row;
  const int reach = params.kernel_width - 1;
  double weight = 0.0;
  double moment = 0.0;
  for (int d = -reach; d <= reach; ++d) {
    const int col = wrap_index(index.col + d, size);
    double w = 0.0;
    for (int r = std::max(0, row - reach); r <= std::min(size - 1, row + reach); ++r) {
      w += std::max(0.0f, map.at(0, r, col));
    }
    weight += w;
    moment += w * d;
  }
  const double col = index.col + (weight > 0.0 ? moment / weight : 0.0);
  const double wrapped = std::fmod(col, static_cast<double>(size));
  return wrapped < 0.0 ? wrapped + size : wrapped;
}

}  // namespace abstractpose
