#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <span>
#include <vector>

#include "abstractpose/cuboid.hpp"
#include "abstractpose/environment.hpp"
#include "abstractpose/hull.hpp"
#include "abstractpose/skeleton.hpp"

namespace abstractpose {

using Rgb = std::array<std::uint8_t, 3>;

/// Default palette, indexed by Part. Left and right limbs use different hue
/// families so facing direction can be read off the image.
std::array<Rgb, kMaxParts> default_palette();

struct RenderConfig {
  double limb_half_width_mm = 40.0;
  double head_half_width_mm = 80.0;
  double torso_depth_mm = 120.0;
  bool separate_head = false;
  std::array<Rgb, kMaxParts> palette = default_palette();
  Rgb background{0, 0, 0};
  // Limb cross-section reference axes, expressed in the frame of the pose
  // handed to the renderer. Callers rendering a world pose through a rig
  // camera pass the world z / x axes rotated into that camera.
  Vec3 limb_reference = Vec3::UnitZ();
  Vec3 limb_fallback_reference = Vec3::UnitX();

  void validate() const;
  int part_count() const { return separate_head ? kMaxParts : kNumBodyParts; }
};

using PartSet = std::bitset<kMaxParts>;

/// Pinhole projection, u = f x / z + cx, v = f y / z + cy. Throws
/// kBehindCamera if any point has z <= 1 mm.
std::vector<Vec2> project_points(std::span<const Vec3> points, const CameraIntrinsics& intrinsics);

SubpixelPoint to_subpixel(const Vec2& pixel);

/// One painted polygon. The default configuration yields ten shapes for
/// nine parts: the head box carries the torso's part id.
struct SceneShape {
  Part part = Part::kTorso;
  Cuboid corners;        // camera frame, mm
  double distance_mm = 0.0;  // camera to the part's defining midpoint
  std::vector<SubpixelPoint> hull;
  bool degenerate = false;   // projected to a line; hull holds its two ends
};

/// Shapes sorted far-to-near, i.e. in painting order. Ties keep part order.
struct Scene {
  int width = 0;
  int height = 0;
  std::vector<SceneShape> shapes;
};

Scene build_scene(const Pose& pose_cam, const CameraIntrinsics& intrinsics,
                  const RenderConfig& config, const PartSet& drop = {});

/// RGB raster plus per-pixel part provenance (0 = background, part + 1).
class AbstractImage {
 public:
  AbstractImage() = default;
  AbstractImage(int width, int height, const Rgb& background);

  int width() const { return width_; }
  int height() const { return height_; }

  Rgb color(int x, int y) const;
  std::uint8_t provenance(int x, int y) const { return provenance_[offset(x, y)]; }
  void set(int x, int y, const Rgb& color, std::uint8_t provenance);

  std::span<const std::uint8_t> rgb() const { return rgb_; }
  std::span<const std::uint8_t> provenance_map() const { return provenance_; }

  /// Number of distinct non-background colours present.
  int color_census() const;
  std::size_t pixel_count(Part part) const;

  bool operator==(const AbstractImage&) const = default;

 private:
  std::size_t offset(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  Rgb background_{0, 0, 0};
  std::vector<std::uint8_t> rgb_;
  std::vector<std::uint8_t> provenance_;
};

/// Scanline fill of every shape in scene order (painter's algorithm). A
/// pixel is covered when its centre lies strictly inside the polygon, or on
/// an edge that satisfies the tie rule (edge going up the screen, or
/// horizontal going right).
AbstractImage rasterize(const Scene& scene, const RenderConfig& config);

AbstractImage render_abstract(const Pose& pose_cam, const CameraIntrinsics& intrinsics,
                              const RenderConfig& config);

AbstractImage render_with_missing_parts(const Pose& pose_cam, const CameraIntrinsics& intrinsics,
                                        const RenderConfig& config, const PartSet& drop);

/// Moves a world pose so its hip centre sits on the rig's fixed point and
/// expresses it in the frame of camera `index`.
Pose place_in_camera(const SyntheticEnvironment& env, CameraIndex index, const Pose& world);

/// Copy of `config` with the limb reference axes set to the world z / x
/// axes seen from camera `index`.
RenderConfig config_for_camera(const SyntheticEnvironment& env, CameraIndex index,
                               RenderConfig config);

}  // namespace abstractpose
