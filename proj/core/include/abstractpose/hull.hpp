#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "abstractpose/common.hpp"

namespace abstractpose {

/// Image-plane point on a fixed-point grid (kSubpixelScale units per pixel).
/// The renderer works on these so every coverage decision is exact integer
/// arithmetic.
struct SubpixelPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  auto operator<=>(const SubpixelPoint&) const = default;
};

inline constexpr std::int64_t kSubpixelScale = 256;

/// Monotone-chain convex hull. Returns the hull counter-clockwise in a
/// y-up frame (clockwise on screen), starting from the lowest-x, lowest-y
/// vertex; collinear boundary points are dropped. Throws kDegenerate when
/// fewer than three distinct points remain or all points are collinear.
std::vector<Vec2> convex_hull(std::span<const Vec2> points);
std::vector<SubpixelPoint> convex_hull(std::span<const SubpixelPoint> points);

}  // namespace abstractpose
