#include "abstractpose/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace abstractpose {
namespace {

constexpr std::int64_t kCoordLimit = std::int64_t{1} << 29;
constexpr std::int64_t kHalfPixel = kSubpixelScale / 2;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Edges for which an exactly-on-edge sample counts as covered.
bool includes_ties(std::int64_t ex, std::int64_t ey) { return ey < 0 || (ey == 0 && ex > 0); }

void fill_polygon(const SceneShape& shape, const Rgb& color, std::uint8_t id, AbstractImage& img) {
  const auto& hull = shape.hull;
  std::int64_t ymin = hull.front().y;
  std::int64_t ymax = hull.front().y;
  for (const auto& p : hull) {
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const std::int64_t row_lo = std::max<std::int64_t>(0, ceil_div(ymin - kHalfPixel, kSubpixelScale));
  const std::int64_t row_hi =
      std::min<std::int64_t>(img.height() - 1, floor_div(ymax - kHalfPixel, kSubpixelScale));

  const std::size_t n = hull.size();
  for (std::int64_t y = row_lo; y <= row_hi; ++y) {
    const std::int64_t sy = y * kSubpixelScale + kHalfPixel;
    std::int64_t lo = 0;
    std::int64_t hi = img.width() - 1;
    for (std::size_t i = 0; i < n && lo <= hi; ++i) {
      const SubpixelPoint& v0 = hull[i];
      const SubpixelPoint& v1 = hull[(i + 1) % n];
      const std::int64_t ex = v1.x - v0.x;
      const std::int64_t ey = v1.y - v0.y;
      // Edge function at pixel column x is a * x + b; covered when >= t.
      const std::int64_t a = -ey * kSubpixelScale;
      const std::int64_t b = ex * (sy - v0.y) - ey * (kHalfPixel - v0.x);
      const std::int64_t t = includes_ties(ex, ey) ? 0 : 1;
      if (a > 0) {
        lo = std::max(lo, ceil_div(t - b, a));
      } else if (a < 0) {
        hi = std::min(hi, floor_div(b - t, -a));
      } else if (b < t) {
        hi = -1;
      }
    }
    for (std::int64_t x = lo; x <= hi; ++x) {
      img.set(static_cast<int>(x), static_cast<int>(y), color, id);
    }
  }
}

void draw_segment(const SceneShape& shape, const Rgb& color, std::uint8_t id, AbstractImage& img) {
  const SubpixelPoint p0 = shape.hull.front();
  const SubpixelPoint p1 = shape.hull.back();
  const std::int64_t dx = p1.x - p0.x;
  const std::int64_t dy = p1.y - p0.y;
  const std::int64_t steps = std::max(std::abs(dx), std::abs(dy)) / kSubpixelScale + 1;
  for (std::int64_t k = 0; k <= steps; ++k) {
    const std::int64_t px = floor_div(p0.x + floor_div(dx * k, steps), kSubpixelScale);
    const std::int64_t py = floor_div(p0.y + floor_div(dy * k, steps), kSubpixelScale);
    if (px >= 0 && px < img.width() && py >= 0 && py < img.height()) {
      img.set(static_cast<int>(px), static_cast<int>(py), color, id);
    }
  }
}

SceneShape make_shape(Part part, const Cuboid& box, const Vec3& anchor,
                      const CameraIntrinsics& intrinsics) {
  SceneShape shape;
  shape.part = part;
  shape.corners = box;
  shape.distance_mm = anchor.norm();
  std::vector<Vec2> pixels;
  try {
    pixels = project_points(box, intrinsics);
  } catch (const Error&) {
    fail(ErrorCode::kBehindCamera, "part " + std::string(part_name(part)) + " is behind the camera");
  }
  std::vector<SubpixelPoint> snapped;
  snapped.reserve(pixels.size());
  for (const Vec2& p : pixels) snapped.push_back(to_subpixel(p));
  try {
    shape.hull = convex_hull(snapped);
  } catch (const Error&) {
    std::sort(snapped.begin(), snapped.end());
    shape.hull = {snapped.front(), snapped.back()};
    shape.degenerate = true;
  }
  return shape;
}

}  // namespace

std::array<Rgb, kMaxParts> default_palette() {
  return {{
      {255, 255, 255},  // torso
      {0, 0, 255},      // left upper arm
      {0, 255, 255},    // left forearm
      {255, 0, 0},      // right upper arm
      {255, 160, 0},    // right forearm
      {0, 200, 0},      // left thigh
      {128, 0, 255},    // left shin
      {255, 0, 255},    // right thigh
      {255, 255, 0},    // right shin
      {128, 128, 128},  // head
  }};
}

void RenderConfig::validate() const {
  if (!(limb_half_width_mm > 0.0)) fail(ErrorCode::kInvalidArgument, "limb_half_width must be > 0");
  if (!(head_half_width_mm > 0.0)) fail(ErrorCode::kInvalidArgument, "head_half_width must be > 0");
  if (!(torso_depth_mm >= 0.0)) fail(ErrorCode::kInvalidArgument, "torso_depth must be >= 0");
  const int n = part_count();
  for (int i = 0; i < n; ++i) {
    const Rgb& c = palette[static_cast<std::size_t>(i)];
    if (c == background) fail(ErrorCode::kInvalidArgument, "palette colour equals background");
    for (int k = i + 1; k < n; ++k) {
      if (c == palette[static_cast<std::size_t>(k)]) {
        fail(ErrorCode::kInvalidArgument, "palette colours must be pairwise distinct");
      }
    }
  }
}

std::vector<Vec2> project_points(std::span<const Vec3> points, const CameraIntrinsics& intrinsics) {
  std::vector<Vec2> out;
  out.reserve(points.size());
  for (const Vec3& p : points) {
    if (!(p.z() > 1.0)) fail(ErrorCode::kBehindCamera, "point within 1 mm of or behind the camera");
    out.emplace_back(intrinsics.focal_length * p.x() / p.z() + intrinsics.principal_point.x(),
                     intrinsics.focal_length * p.y() / p.z() + intrinsics.principal_point.y());
  }
  return out;
}

SubpixelPoint to_subpixel(const Vec2& pixel) {
  auto snap = [](double v) {
    const double s = std::round(v * static_cast<double>(kSubpixelScale));
    return static_cast<std::int64_t>(
        std::clamp(s, -static_cast<double>(kCoordLimit), static_cast<double>(kCoordLimit)));
  };
  return {snap(pixel.x()), snap(pixel.y())};
}

Scene build_scene(const Pose& pose_cam, const CameraIntrinsics& intrinsics,
                  const RenderConfig& config, const PartSet& drop) {
  config.validate();
  intrinsics.validate();
  Scene scene;
  scene.width = intrinsics.width;
  scene.height = intrinsics.height;

  if (!drop.test(index_of(Part::kTorso))) {
    scene.shapes.push_back(make_shape(Part::kTorso, torso_cuboid(pose_cam, config.torso_depth_mm),
                                      0.5 * (hip_center(pose_cam) + shoulder_center(pose_cam)),
                                      intrinsics));
  }
  const auto& bones = bone_order();
  for (int b = 0; b < kNumBones; ++b) {
    const Part part = part_of_bone(b, config.separate_head);
    if (part == Part::kTorso && b != 0) continue;  // torso bones live inside the slab
    if (drop.test(static_cast<std::size_t>(index_of(part)))) continue;
    const Vec3& a = pose_cam[bones[static_cast<std::size_t>(b)].parent];
    const Vec3& c = pose_cam[bones[static_cast<std::size_t>(b)].child];
    const double half = b == 0 ? config.head_half_width_mm : config.limb_half_width_mm;
    scene.shapes.push_back(make_shape(
        part, limb_cuboid(a, c, half, config.limb_reference, config.limb_fallback_reference),
        0.5 * (a + c), intrinsics));
  }

  std::stable_sort(scene.shapes.begin(), scene.shapes.end(),
                   [](const SceneShape& l, const SceneShape& r) { return l.distance_mm > r.distance_mm; });
  return scene;
}

AbstractImage::AbstractImage(int width, int height, const Rgb& background)
    : width_(width), height_(height), background_(background) {
  if (width <= 0 || height <= 0) fail(ErrorCode::kInvalidArgument, "image size must be positive");
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  rgb_.resize(3 * n);
  for (std::size_t i = 0; i < n; ++i) std::copy(background.begin(), background.end(), rgb_.begin() + 3 * i);
  provenance_.assign(n, 0);
}

Rgb AbstractImage::color(int x, int y) const {
  const std::size_t o = 3 * offset(x, y);
  return {rgb_[o], rgb_[o + 1], rgb_[o + 2]};
}

void AbstractImage::set(int x, int y, const Rgb& color, std::uint8_t provenance) {
  const std::size_t o = offset(x, y);
  std::copy(color.begin(), color.end(), rgb_.begin() + static_cast<std::ptrdiff_t>(3 * o));
  provenance_[o] = provenance;
}

int AbstractImage::color_census() const {
  std::set<Rgb> seen;
  for (std::size_t i = 0; i < provenance_.size(); ++i) {
    const Rgb c{rgb_[3 * i], rgb_[3 * i + 1], rgb_[3 * i + 2]};
    if (c != background_) seen.insert(c);
  }
  return static_cast<int>(seen.size());
}

std::size_t AbstractImage::pixel_count(Part part) const {
  const auto id = static_cast<std::uint8_t>(index_of(part) + 1);
  return static_cast<std::size_t>(std::count(provenance_.begin(), provenance_.end(), id));
}

AbstractImage rasterize(const Scene& scene, const RenderConfig& config) {
  AbstractImage img(scene.width, scene.height, config.background);
  for (const SceneShape& shape : scene.shapes) {
    const Rgb& color = config.palette[static_cast<std::size_t>(index_of(shape.part))];
    const auto id = static_cast<std::uint8_t>(index_of(shape.part) + 1);
    if (shape.degenerate) {
      draw_segment(shape, color, id, img);
    } else {
      fill_polygon(shape, color, id, img);
    }
  }
  return img;
}

AbstractImage render_abstract(const Pose& pose_cam, const CameraIntrinsics& intrinsics,
                              const RenderConfig& config) {
  return rasterize(build_scene(pose_cam, intrinsics, config), config);
}

AbstractImage render_with_missing_parts(const Pose& pose_cam, const CameraIntrinsics& intrinsics,
                                        const RenderConfig& config, const PartSet& drop) {
  return rasterize(build_scene(pose_cam, intrinsics, config, drop), config);
}

Pose place_in_camera(const SyntheticEnvironment& env, CameraIndex index, const Pose& world) {
  const Pose centered = world.translated(env.fixed_point() - hip_center(world));
  const Mat3& r = env.rotation(index);
  return centered.transformed(r.transpose(), -r.transpose() * env.position(index));
}

RenderConfig config_for_camera(const SyntheticEnvironment& env, CameraIndex index,
                               RenderConfig config) {
  const Mat3& r = env.rotation(index);
  config.limb_reference = r.transpose() * Vec3::UnitZ();
  config.limb_fallback_reference = r.transpose() * Vec3::UnitX();
  return config;
}

}  // namespace abstractpose
