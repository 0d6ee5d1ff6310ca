#include <random>

#include <benchmark/benchmark.h>

#include "abstractpose/environment.hpp"
#include "abstractpose/renderer.hpp"
#include "abstractpose/sampling.hpp"

namespace ap = abstractpose;

namespace {

// Image side comes from the range argument.
void BM_Render(benchmark::State& state) {
  ap::EnvConfig config;
  const int side = static_cast<int>(state.range(0));
  config.intrinsics.width = config.intrinsics.height = side;
  config.intrinsics.principal_point = ap::Vec2(0.5 * side, 0.5 * side);
  config.intrinsics.focal_length = 280.0 * side / 256.0;
  const ap::SyntheticEnvironment env(config);
  std::mt19937_64 rng(2);
  const ap::CameraIndex cam = ap::sample_camera(rng, env);
  const ap::Pose pose = ap::place_in_camera(env, cam, ap::sample_pose(rng));
  const ap::RenderConfig cfg = ap::config_for_camera(env, cam, {});
  for (auto _ : state) benchmark::DoNotOptimize(ap::render_abstract(pose, env.intrinsics(), cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Render)->Arg(128)->Arg(256)->Arg(512);

}  // namespace
