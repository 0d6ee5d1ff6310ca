#pragma once

namespace abstractpose {

/// Gaussian stamp settings shared by the viewpoint and pose codecs. Sizes in
/// heatmap cells.
struct CodecParams {
  double sigma = 2.0;
  int kernel_width = 13;
  int pose_map_size = 128;

  /// Throws unless sigma > 0 and 0 < kernel_width <= map_size.
  void validate(int map_size) const;
};

}  // namespace abstractpose
