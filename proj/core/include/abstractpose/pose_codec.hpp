#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "abstractpose/codec_params.hpp"
#include "abstractpose/heatmap.hpp"
#include "abstractpose/skeleton.hpp"

namespace abstractpose {

/// theta = atan2(y, x) (azimuth), phi = atan2(z, hypot(x, y)) (elevation),
/// both in degrees. Both axes of the pose map cover [-180, 180).
struct SphericalAngles {
  double theta_deg = 0.0;
  double phi_deg = 0.0;
};

/// Heatmap cell of a direction: theta selects the column, phi the row.
struct AngleBin {
  int theta = 0;
  int phi = 0;

  auto operator<=>(const AngleBin&) const = default;
};

std::array<Vec3, kNumBones> bones_to_camera_frame(const BoneDecomposition& bones,
                                                  const Mat3& camera_rotation);

SphericalAngles to_spherical(const Vec3& direction);
Vec3 from_spherical(const SphericalAngles& angles);

/// floor((deg + 180) / 360 * bins) mod bins.
int angle_to_bin(double deg, int bins);
/// Centre angle of a bin, in (-180, 180).
double bin_center_angle(int bin, int bins);

AngleBin angles_to_bins(const SphericalAngles& angles, int bins);
SphericalAngles bins_to_angles(const AngleBin& bin, int bins);

/// Writes G(k1, k2) for k1, k2 in [-W/2, W/2] at ((mu_row + k2) mod n,
/// (mu_col + k1) mod n). Centres may lie outside [0, n).
void stamp_wrapped_gaussian(Heatmap& map, int channel, int mu_row, int mu_col,
                            const CodecParams& params);

/// One channel per direction, pose_map_size square, doubly wrapped.
/// Throws kInvalidArgument when a direction is not unit length (1e-6).
Heatmap encode_pose(std::span<const Vec3> directions, const CodecParams& params);

/// Argmax per channel -> bin centre -> unit vector. Empty channels come back
/// as nullopt.
std::vector<std::optional<Vec3>> decode_pose_partial(const Heatmap& maps);

/// As decode_pose_partial for a 13-channel map, but throws kNoDetection
/// naming every empty channel.
std::array<Vec3, kNumBones> decode_pose(const Heatmap& maps);

}  // namespace abstractpose
