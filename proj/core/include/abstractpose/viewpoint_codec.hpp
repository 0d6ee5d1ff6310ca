#pragma once

#include <vector>

#include "abstractpose/codec_params.hpp"
#include "abstractpose/environment.hpp"
#include "abstractpose/heatmap.hpp"

namespace abstractpose {

/// Camera array re-indexed so column 0 is the camera directly behind the
/// subject. Rotated column k holds original column (k + shift) mod cols;
/// rows are untouched.
class CameraIndexPermutation {
 public:
  CameraIndexPermutation(const SyntheticEnvironment& env, int shift);

  int shift() const { return shift_; }
  int cols() const { return cols_; }
  int rows() const { return rows_; }

  CameraIndex to_rotated(CameraIndex original) const;
  CameraIndex to_original(CameraIndex rotated) const;

  const Vec3& position(CameraIndex rotated) const;
  const Mat3& rotation(CameraIndex rotated) const;

 private:
  std::size_t slot(CameraIndex rotated) const;

  int shift_ = 0;
  int cols_ = 0;
  int rows_ = 0;
  std::vector<Vec3> positions_;
  std::vector<Mat3> rotations_;
};

/// Picks the column whose horizontal camera forward best matches the
/// subject's horizontal forward and shifts the array so that column lands
/// on index 0. Throws kDegenerate when the forward vector is vertical.
CameraIndexPermutation rotate_camera_array(const SyntheticEnvironment& env,
                                           const Vec3& subject_forward);

/// One-channel heatmap_size x heatmap_size map with a Gaussian at
/// (col, seam_row_first + row). Columns wrap around, rows do not.
Heatmap encode_viewpoint(CameraIndex rotated_index, const CodecParams& params,
                         const EnvConfig& config);

/// Argmax decode. Throws kNoDetection for an empty map or a peak outside
/// the camera band.
CameraIndex decode_viewpoint(const Heatmap& map, const EnvConfig& config);

/// Sub-cell column estimate: circular centroid of the column profile around
/// the argmax, in [0, heatmap_size).
double refine_viewpoint_column(const Heatmap& map, const CodecParams& params,
                               const EnvConfig& config);

}  // namespace abstractpose
