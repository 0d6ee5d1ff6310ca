#include <random>

#include <gtest/gtest.h>

#include "abstractpose/renderer.hpp"
#include "abstractpose/sampling.hpp"
#include "oracles.hpp"

namespace abstractpose {
namespace {

using testing::front_camera;

SceneShape square_shape(Part part, double distance, int x0, int y0, int x1, int y1) {
  SceneShape s;
  s.part = part;
  s.distance_mm = distance;
  auto sp = [](int x, int y) { return SubpixelPoint{x * kSubpixelScale, y * kSubpixelScale}; };
  // CCW in a y-up frame, matching convex_hull.
  s.hull = {sp(x0, y0), sp(x1, y0), sp(x1, y1), sp(x0, y1)};
  return s;
}

TEST(Renderer, ProjectsThroughThePinhole) {
  const CameraIntrinsics intr;
  const std::vector<Vec3> pts{{100, 0, 1000}, {0, 0, 500}, {-280, 140, 1400}};
  const auto px = project_points(pts, intr);
  EXPECT_TRUE(px[0].isApprox(Vec2(156, 128)));
  EXPECT_TRUE(px[1].isApprox(Vec2(128, 128)));
  EXPECT_TRUE(px[2].isApprox(Vec2(72, 156)));
}

TEST(Renderer, PointsBehindTheCameraAreRejected) {
  const std::vector<Vec3> pts{{0, 0, 1000}, {0, 0, -5}};
  try {
    project_points(pts, CameraIntrinsics{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBehindCamera);
  }
}

TEST(Renderer, SquareCoversPixelCentresInside) {
  Scene scene{16, 16, {square_shape(Part::kTorso, 1.0, 2, 3, 6, 8)}};
  const RenderConfig cfg;
  const AbstractImage img = rasterize(scene, cfg);
  EXPECT_EQ(img.pixel_count(Part::kTorso), 4u * 5u);
  EXPECT_EQ(img.provenance(2, 3), 1);
  EXPECT_EQ(img.provenance(5, 7), 1);
  EXPECT_EQ(img.provenance(6, 7), 0);
  EXPECT_EQ(img.provenance(1, 3), 0);
}

TEST(Renderer, SharedEdgeIsPaintedExactlyOnce) {
  // Two squares sharing a vertical edge through pixel centres.
  SceneShape left;
  left.part = Part::kLeftThigh;
  SceneShape right;
  right.part = Part::kRightThigh;
  const std::int64_t h = kSubpixelScale / 2;
  const std::int64_t mid = 5 * kSubpixelScale + h;
  left.hull = {{0, 0}, {mid, 0}, {mid, 10 * kSubpixelScale}, {0, 10 * kSubpixelScale}};
  right.hull = {{mid, 0}, {10 * kSubpixelScale, 0}, {10 * kSubpixelScale, 10 * kSubpixelScale},
                {mid, 10 * kSubpixelScale}};
  const RenderConfig cfg;
  const AbstractImage a = rasterize(Scene{10, 10, {left}}, cfg);
  const AbstractImage b = rasterize(Scene{10, 10, {right}}, cfg);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      EXPECT_EQ((a.provenance(x, y) != 0) + (b.provenance(x, y) != 0), 1) << x << "," << y;
    }
  }
}

TEST(Renderer, NearerShapePaintsOver) {
  const RenderConfig cfg;
  Scene scene{20, 20,
              {square_shape(Part::kTorso, 2000.0, 0, 0, 12, 12),
               square_shape(Part::kRightForearm, 1000.0, 8, 8, 20, 20)}};
  const AbstractImage img = rasterize(scene, cfg);
  EXPECT_EQ(img.color(10, 10), cfg.palette[index_of(Part::kRightForearm)]);
  EXPECT_EQ(img.color(4, 4), cfg.palette[index_of(Part::kTorso)]);
  EXPECT_EQ(img.pixel_count(Part::kTorso), 144u - 16u);
}

TEST(Renderer, SceneIsSortedFarToNear) {
  const SyntheticEnvironment env(EnvConfig{});
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const CameraIndex cam = sample_camera(rng, env);
    const Pose p = place_in_camera(env, cam, sample_pose(rng));
    const Scene scene = build_scene(p, env.intrinsics(), config_for_camera(env, cam, {}));
    ASSERT_EQ(scene.shapes.size(), 10u);
    for (std::size_t k = 1; k < scene.shapes.size(); ++k) {
      EXPECT_GE(scene.shapes[k - 1].distance_mm, scene.shapes[k].distance_mm);
    }
  }
}

TEST(Renderer, MatchesPerPixelOracleOnRandomPoses) {
  const SyntheticEnvironment env(EnvConfig{});
  std::mt19937_64 rng(32);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const CameraIndex cam = sample_camera(rng, env);
    const Pose p = place_in_camera(env, cam, sample_pose(rng));
    const RenderConfig cfg = config_for_camera(env, cam, {});
    const Scene scene = build_scene(p, env.intrinsics(), cfg);
    bool degenerate = false;
    for (const auto& s : scene.shapes) degenerate |= s.degenerate;
    if (degenerate) continue;
    ASSERT_EQ(rasterize(scene, cfg), testing::brute_force_raster(scene, cfg)) << "trial " << trial;
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(Renderer, MatchesOracleOnRandomPolygons) {
  std::mt19937_64 rng(33);
  const RenderConfig cfg;
  for (int trial = 0; trial < 300; ++trial) {
    Scene scene{24, 20, {}};
    for (int s = 0; s < 4; ++s) {
      std::vector<SubpixelPoint> pts;
      for (int k = 0; k < 6; ++k) {
        // Coarse grid so many vertices and edges pass exactly through pixel centres.
        pts.push_back({(uniform_index(rng, 64) - 16) * (kSubpixelScale / 2),
                       (uniform_index(rng, 56) - 8) * (kSubpixelScale / 2)});
      }
      SceneShape shape;
      shape.part = static_cast<Part>(s);
      try {
        shape.hull = convex_hull(pts);
      } catch (const Error&) {
        continue;
      }
      scene.shapes.push_back(shape);
    }
    ASSERT_EQ(rasterize(scene, cfg), testing::brute_force_raster(scene, cfg)) << "trial " << trial;
  }
}

TEST(Renderer, TPoseFromTheFrontShowsEveryPart) {
  const SyntheticEnvironment env(EnvConfig{});
  const CameraIndex cam = front_camera(env, 0);
  const RenderConfig cfg = config_for_camera(env, cam, {});
  const AbstractImage img = render_abstract(place_in_camera(env, cam, testing::t_pose()), env.intrinsics(), cfg);
  EXPECT_EQ(img.color_census(), 9);
  for (int p = 0; p < kNumBodyParts; ++p) EXPECT_GT(img.pixel_count(static_cast<Part>(p)), 0u) << p;
  // The subject's right arm appears on the image left when facing the camera.
  std::size_t right_arm_left_half = 0;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width() / 2; ++x) {
      right_arm_left_half += img.provenance(x, y) == index_of(Part::kRightForearm) + 1;
    }
  }
  EXPECT_EQ(right_arm_left_half, img.pixel_count(Part::kRightForearm));
}

TEST(Renderer, SeparateHeadAddsATenthColour) {
  const SyntheticEnvironment env(EnvConfig{});
  const CameraIndex cam = front_camera(env, 1);
  RenderConfig cfg = config_for_camera(env, cam, {});
  cfg.separate_head = true;
  const AbstractImage img = render_abstract(place_in_camera(env, cam, testing::t_pose()), env.intrinsics(), cfg);
  EXPECT_EQ(img.color_census(), 10);
}

TEST(Renderer, ArmInFrontOfTorsoOccludesIt) {
  const SyntheticEnvironment env(EnvConfig{});
  const CameraIndex cam = front_camera(env, 0);
  const RenderConfig cfg = config_for_camera(env, cam, {});
  const Pose p = place_in_camera(env, cam, testing::arm_across_torso_pose());
  const Scene scene = build_scene(p, env.intrinsics(), cfg);
  const AbstractImage img = rasterize(scene, cfg);
  // The left forearm crosses the torso; no overlap pixel may show the torso.
  const Cuboid slab = torso_cuboid(p, cfg.torso_depth_mm);
  const SceneShape* torso = nullptr;
  const SceneShape* forearm = nullptr;
  for (const auto& s : scene.shapes) {
    if (s.part == Part::kTorso && (s.corners[0] - slab[0]).norm() < 1e-9) torso = &s;
    if (s.part == Part::kLeftForearm) forearm = &s;
  }
  ASSERT_TRUE(torso && forearm);
  EXPECT_LT(forearm->distance_mm, torso->distance_mm);
  int overlap = 0;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (testing::pixel_in_polygon(torso->hull, x, y) && testing::pixel_in_polygon(forearm->hull, x, y)) {
        ++overlap;
        EXPECT_NE(img.provenance(x, y), index_of(Part::kTorso) + 1);
      }
    }
  }
  EXPECT_GT(overlap, 30);
}

TEST(Renderer, MissingPartsLeaveBackgroundOrOtherParts) {
  const SyntheticEnvironment env(EnvConfig{});
  const CameraIndex cam = front_camera(env, 2);
  const RenderConfig cfg = config_for_camera(env, cam, {});
  const Pose p = place_in_camera(env, cam, testing::spread_eagle_pose());
  PartSet drop;
  drop.set(index_of(Part::kLeftForearm));
  drop.set(index_of(Part::kRightShin));
  const AbstractImage full = render_abstract(p, env.intrinsics(), cfg);
  const AbstractImage partial = render_with_missing_parts(p, env.intrinsics(), cfg, drop);
  EXPECT_EQ(partial.pixel_count(Part::kLeftForearm), 0u);
  EXPECT_EQ(partial.pixel_count(Part::kRightShin), 0u);
  EXPECT_EQ(partial.color_census(), 7);
  EXPECT_GT(full.pixel_count(Part::kLeftForearm), 0u);
  drop.set();
  const AbstractImage empty = render_with_missing_parts(p, env.intrinsics(), cfg, drop);
  EXPECT_EQ(empty.color_census(), 0);
}

TEST(Renderer, DroppingAnOccluderCanRaiseTheCensus) {
  // Side view of a T-pose: the near limbs hide the far ones, so removing
  // one part can uncover more than one hidden part.
  const SyntheticEnvironment env(EnvConfig{});
  const CameraIndex cam{0, 1};
  const RenderConfig cfg = config_for_camera(env, cam, {});
  const Pose p = place_in_camera(env, cam, testing::t_pose());
  auto census = [&](const PartSet& drop) {
    return render_with_missing_parts(p, env.intrinsics(), cfg, drop).color_census();
  };
  EXPECT_LT(census({}), 9);
  bool increase = false;
  for (int a = 0; a < kNumBodyParts && !increase; ++a) {
    PartSet base;
    base.set(static_cast<std::size_t>(a));
    for (int b = 0; b < kNumBodyParts && !increase; ++b) {
      if (b == a) continue;
      PartSet more = base;
      more.set(static_cast<std::size_t>(b));
      increase = census(more) > census(base);
    }
  }
  EXPECT_TRUE(increase);
}

TEST(Renderer, SubjectOutsideTheFrustumRendersEmpty) {
  const CameraIntrinsics intr;
  Pose p = testing::t_pose();
  // Camera frame: z forward. Push the subject far off to the side.
  for (auto& j : p.joints) j = Vec3(j.x() + 50000.0, j.z(), 4000.0 + j.y());
  const AbstractImage img = render_abstract(p, intr, RenderConfig{});
  EXPECT_EQ(img.color_census(), 0);
}

TEST(Renderer, RenderingIsDeterministic) {
  const SyntheticEnvironment env(EnvConfig{});
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const CameraIndex cam = sample_camera(rng, env);
    const Pose p = place_in_camera(env, cam, sample_pose(rng));
    const RenderConfig cfg = config_for_camera(env, cam, {});
    EXPECT_EQ(render_abstract(p, env.intrinsics(), cfg), render_abstract(p, env.intrinsics(), cfg));
  }
}

TEST(Renderer, RejectsBadConfig) {
  RenderConfig cfg;
  cfg.palette[3] = cfg.palette[4];
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.palette[0] = cfg.background;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.limb_half_width_mm = 0.0;
  EXPECT_THROW(cfg.validate(), Error);
}

}  // namespace
}  // namespace abstractpose
