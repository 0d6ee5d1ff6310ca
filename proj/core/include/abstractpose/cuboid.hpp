#pragma once

#include <array>

#include "abstractpose/common.hpp"
#include "abstractpose/skeleton.hpp"

namespace abstractpose {

/// Eight corners; bit 0 / bit 1 of the index select the sign along the two
/// cross-section axes and bit 2 selects the far end (b for limbs, +up for
/// the torso).
using Cuboid = std::array<Vec3, 8>;

/// Box along a->b with a square cross-section of side 2 * half_width. The
/// cross-section axes come from (b - a) x reference, switching to
/// `fallback_reference` when the bone is within ~2.6 deg of `reference`.
Cuboid limb_cuboid(const Vec3& a, const Vec3& b, double half_width,
                   const Vec3& reference = Vec3::UnitZ(),
                   const Vec3& fallback_reference = Vec3::UnitX());

/// Slab from the hip centre to the shoulder centre, as wide as the wider of
/// the shoulder / hip separations and `depth` thick along the forward vector.
Cuboid torso_cuboid(const Pose& pose, double depth);

/// Midpoint of the eight corners.
Vec3 cuboid_center(const Cuboid& box);

/// The three edge directions leaving corner 0 (not normalised).
std::array<Vec3, 3> cuboid_edges(const Cuboid& box);

double cuboid_volume(const Cuboid& box);

}  // namespace abstractpose
