#include "abstractpose/hull.hpp"

#include <algorithm>

namespace abstractpose {
namespace {

template <typename S>
struct P2 {
  S x;
  S y;
  auto operator<=>(const P2&) const = default;
};

template <typename S>
S cross(const P2<S>& o, const P2<S>& a, const P2<S>& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

template <typename S>
std::vector<P2<S>> monotone_chain(std::vector<P2<S>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) fail(ErrorCode::kDegenerate, "convex hull needs at least 3 distinct points");

  std::vector<P2<S>> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= S(0)) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= S(0)) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) fail(ErrorCode::kDegenerate, "all points are collinear");
  return hull;
}

}  // namespace

std::vector<Vec2> convex_hull(std::span<const Vec2> points) {
  std::vector<P2<double>> pts;
  pts.reserve(points.size());
  for (const Vec2& p : points) {
    if (!p.allFinite()) fail(ErrorCode::kInvalidArgument, "non-finite hull input");
    pts.push_back({p.x(), p.y()});
  }
  std::vector<Vec2> out;
  for (const auto& p : monotone_chain(std::move(pts))) out.emplace_back(p.x, p.y);
  return out;
}

std::vector<SubpixelPoint> convex_hull(std::span<const SubpixelPoint> points) {
  std::vector<P2<std::int64_t>> pts;
  pts.reserve(points.size());
  for (const SubpixelPoint& p : points) pts.push_back({p.x, p.y});
  std::vector<SubpixelPoint> out;
  for (const auto& p : monotone_chain(std::move(pts))) out.push_back({p.x, p.y});
  return out;
}

}  // namespace abstractpose
