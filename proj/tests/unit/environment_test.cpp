#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "abstractpose/environment.hpp"

namespace abstractpose {
namespace {

TEST(Environment, PaperRigHas320CamerasOnTheSphere) {
  const SyntheticEnvironment env = build_environment(EnvConfig{});
  EXPECT_EQ(env.camera_count(), 320);
  for (int i = 0; i < env.cols(); ++i) {
    for (int j = 0; j < env.rows(); ++j) {
      EXPECT_NEAR(env.position({i, j}).norm(), 5569.0, 1e-6);
    }
  }
}

TEST(Environment, FixedPointIsScaledMeanOfPositions) {
  const EnvConfig config;
  const SyntheticEnvironment env(config);
  Vec3 sum = Vec3::Zero();
  double mean_z = 0.0;
  for (int i = 0; i < env.cols(); ++i) {
    for (int j = 0; j < env.rows(); ++j) {
      sum += env.position({i, j});
      mean_z += env.position({i, j}).z();
    }
  }
  mean_z /= env.camera_count();
  // Symmetric azimuth grid: horizontal components cancel.
  EXPECT_NEAR(sum.x(), 0.0, 1e-6);
  EXPECT_NEAR(sum.y(), 0.0, 1e-6);
  EXPECT_NEAR(env.fixed_point().x(), 0.0, 1e-9);
  EXPECT_NEAR(env.fixed_point().y(), 0.0, 1e-9);
  EXPECT_NEAR(env.fixed_point().z(), 0.4 * mean_z, 1e-9);
  // Elevations 10..70 deg in five rows.
  double expected = 0.0;
  for (double el : {10.0, 25.0, 40.0, 55.0, 70.0}) expected += std::sin(el * M_PI / 180.0);
  EXPECT_NEAR(mean_z, 5569.0 * expected / 5.0, 1e-6);
}

TEST(Environment, TinyScaleLooksAtTheCentre) {
  EnvConfig config;
  config.fixed_point_scale = 1e-12;
  const SyntheticEnvironment env(config);
  EXPECT_LT(env.fixed_point().norm(), 1e-6);
  for (int i = 0; i < env.cols(); i += 7) {
    const Vec3 look = -env.position({i, 2}).normalized();
    EXPECT_LT((env.forward({i, 2}) - look).norm(), 1e-9);
  }
}

TEST(Environment, RotationsAreProperAndLookAtTheFixedPoint) {
  const SyntheticEnvironment env(EnvConfig{});
  for (int i = 0; i < env.cols(); ++i) {
    for (int j = 0; j < env.rows(); ++j) {
      const Mat3& r = camera_rotation(env, i, j);
      EXPECT_LT((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_NEAR(r.determinant(), 1.0, 1e-9);
      const Vec3 look = (env.fixed_point() - env.position({i, j})).normalized();
      const double angle = std::acos(std::clamp(r.col(2).dot(look), -1.0, 1.0));
      EXPECT_LT(angle, 1e-6);
      EXPECT_LT((r.transpose() * look - Vec3::UnitZ()).norm(), 1e-9);
      // Image x is horizontal and image y points downwards.
      EXPECT_NEAR(r.col(0).z(), 0.0, 1e-12);
      EXPECT_LT(r.col(1).z(), 0.0);
    }
  }
}

TEST(Environment, LowRowLookHasZeroVerticalComponentOnlyAtFixedPointHeight) {
  EnvConfig config;
  const SyntheticEnvironment env(config);
  const Vec3 f = env.fixed_point();
  for (int j = 0; j < env.rows(); ++j) {
    const Vec3 look = f - env.position({0, j});
    EXPECT_EQ(std::abs(look.z()) < 1e-9, std::abs(env.position({0, j}).z() - f.z()) < 1e-9);
  }
  // With a flat ring at the fixed-point height the look is horizontal.
  config.elevation_min_deg = config.elevation_max_deg = 0.0;
  config.grid_rows = 1;
  const SyntheticEnvironment flat(config);
  EXPECT_NEAR(flat.fixed_point().z(), 0.0, 1e-9);
  EXPECT_NEAR(flat.forward({3, 0}).z(), 0.0, 1e-12);
}

TEST(Environment, ConstructionIsDeterministic) {
  const SyntheticEnvironment a(EnvConfig{});
  const SyntheticEnvironment b(EnvConfig{});
  for (int i = 0; i < a.cols(); ++i) {
    for (int j = 0; j < a.rows(); ++j) {
      EXPECT_EQ(a.position({i, j}), b.position({i, j}));
      EXPECT_EQ(a.rotation({i, j}), b.rotation({i, j}));
    }
  }
}

TEST(Environment, RejectsOutOfRangeIndex) {
  const SyntheticEnvironment env(EnvConfig{});
  EXPECT_THROW(camera_rotation(env, 64, 0), Error);
  EXPECT_THROW(camera_rotation(env, 0, 5), Error);
  EXPECT_THROW(camera_rotation(env, -1, 0), Error);
  try {
    camera_rotation(env, 0, -1);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
}

TEST(Environment, RejectsInvalidConfigs) {
  auto expect_invalid = [](EnvConfig c) {
    try {
      SyntheticEnvironment env(c);
      ADD_FAILURE() << "expected rejection";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    }
  };
  EnvConfig c;
  c.fixed_point_scale = 0.5;
  expect_invalid(c);
  c = {};
  c.radius_mm = 0.0;
  expect_invalid(c);
  c = {};
  c.seam_row_last = 64;
  expect_invalid(c);
  c = {};
  c.grid_rows = 7;  // span [25, 30] holds only six rows
  expect_invalid(c);
  c = {};
  c.intrinsics.principal_point = Vec2(300, 10);
  expect_invalid(c);
}

TEST(Environment, RejectsCameraLookingStraightDown) {
  EnvConfig c;
  c.grid_cols = 4;
  c.elevation_min_deg = -89.9999999999;
  c.elevation_max_deg = -89.9999999999;
  c.grid_rows = 1;
  // Cameras directly under the centre see f along +z.
  try {
    SyntheticEnvironment env(c);
    ADD_FAILURE() << "expected degenerate camera";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerate);
  }
}

}  // namespace
}  // namespace abstractpose
