#include "abstractpose/pose_codec.hpp"

#include <cmath>
#include <string>

namespace abstractpose {

std::array<Vec3, kNumBones> bones_to_camera_frame(const BoneDecomposition& bones,
                                                  const Mat3& camera_rotation) {
  std::array<Vec3, kNumBones> out;
  const Mat3 world_to_camera = camera_rotation.transpose();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = world_to_camera * bones.directions[k];
  return out;
}

SphericalAngles to_spherical(const Vec3& d) {
  return {rad_to_deg(std::atan2(d.y(), d.x())),
          rad_to_deg(std::atan2(d.z(), std::hypot(d.x(), d.y())))};
}

Vec3 from_spherical(const SphericalAngles& a) {
  const double t = deg_to_rad(a.theta_deg);
  const double p = deg_to_rad(a.phi_deg);
  return {std::cos(p) * std::cos(t), std::cos(p) * std::sin(t), std::sin(p)};
}

int angle_to_bin(double deg, int bins) {
  if (!std::isfinite(deg)) fail(ErrorCode::kInvalidArgument, "non-finite angle");
  const double scaled = std::floor((deg + 180.0) / 360.0 * bins);
  return wrap_index(static_cast<int>(std::fmod(scaled, static_cast<double>(bins))), bins);
}

double bin_center_angle(int bin, int bins) {
  return (wrap_index(bin, bins) + 0.5) * 360.0 / bins - 180.0;
}

AngleBin angles_to_bins(const SphericalAngles& angles, int bins) {
  return {angle_to_bin(angles.theta_deg, bins), angle_to_bin(angles.phi_deg, bins)};
}

SphericalAngles bins_to_angles(const AngleBin& bin, int bins) {
  return {bin_center_angle(bin.theta, bins), bin_center_angle(bin.phi, bins)};
}

void stamp_wrapped_gaussian(Heatmap& map, int channel, int mu_row, int mu_col,
                            const CodecParams& params) {
  if (map.rows() != map.cols()) fail(ErrorCode::kInvalidArgument, "pose maps must be square");
  const int n = map.rows();
  params.validate(n);
  const int half = params.kernel_width / 2;
  for (int k2 = -half; k2 <= half; ++k2) {
    const int h = wrap_index(mu_row + k2, n);
    for (int k1 = -half; k1 <= half; ++k1) {
      const int g = wrap_index(mu_col + k1, n);
      map.at(channel, h, g) = static_cast<float>(gaussian(k1, k2, params.sigma));
    }
  }
}

Heatmap encode_pose(std::span<const Vec3> directions, const CodecParams& params) {
  if (directions.empty()) fail(ErrorCode::kInvalidArgument, "no bone directions to encode");
  const int n = params.pose_map_size;
  params.validate(n);
  Heatmap maps(static_cast<int>(directions.size()), n, n);
  for (std::size_t k = 0; k < directions.size(); ++k) {
    const Vec3& d = directions[k];
    if (!d.allFinite() || std::abs(d.norm() - 1.0) > 1e-6) {
      fail(ErrorCode::kInvalidArgument, "bone " + std::to_string(k) + " is not a unit vector");
    }
    const AngleBin bin = angles_to_bins(to_spherical(d), n);
    stamp_wrapped_gaussian(maps, static_cast<int>(k), bin.phi, bin.theta, params);
  }
  return maps;
}

std::vector<std::optional<Vec3>> decode_pose_partial(const Heatmap& maps) {
  if (maps.rows() != maps.cols()) fail(ErrorCode::kInvalidArgument, "pose maps must be square");
  std::vector<std::optional<Vec3>> out(static_cast<std::size_t>(maps.channels()));
  for (int c = 0; c < maps.channels(); ++c) {
    try {
      const Peak peak = find_peak(maps, c);
      out[static_cast<std::size_t>(c)] =
          from_spherical(bins_to_angles({peak.col, peak.row}, maps.cols()));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoDetection) throw;
    }
  }
  return out;
}

std::array<Vec3, kNumBones> decode_pose(const Heatmap& maps) {
  if (maps.channels() != kNumBones) fail(ErrorCode::kInvalidArgument, "expected 13 pose channels");
  const auto partial = decode_pose_partial(maps);
  std::array<Vec3, kNumBones> out;
  std::string missing;
  for (std::size_t k = 0; k < partial.size(); ++k) {
    if (partial[k]) {
      out[k] = *partial[k];
    } else {
      missing += (missing.empty() ? "" : ", ") + std::to_string(k);
    }
  }
  if (!missing.empty()) fail(ErrorCode::kNoDetection, "no response for bone channel(s) " + missing);
  return out;
}

}  // namespace abstractpose
