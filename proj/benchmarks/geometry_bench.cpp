#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "abstractpose/hull.hpp"
#include "abstractpose/metrics.hpp"
#include "abstractpose/sampling.hpp"

namespace ap = abstractpose;

namespace {

void BM_ConvexHull(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<ap::Vec2> pts;
  for (int i = 0; i < state.range(0); ++i) pts.emplace_back(1000.0 * ap::uniform01(rng), 1000.0 * ap::uniform01(rng));
  for (auto _ : state) benchmark::DoNotOptimize(ap::convex_hull(pts));
}
BENCHMARK(BM_ConvexHull)->Arg(8)->Arg(20)->Arg(256);

void BM_PaMpjpe(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const ap::Pose a = ap::sample_pose(rng);
  const ap::Pose b = ap::sample_pose(rng);
  for (auto _ : state) benchmark::DoNotOptimize(ap::pa_mpjpe(a, b));
}
BENCHMARK(BM_PaMpjpe);

void BM_EvaluatePose(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const ap::Pose a = ap::sample_pose(rng);
  const ap::Pose b = ap::sample_pose(rng);
  for (auto _ : state) benchmark::DoNotOptimize(ap::evaluate_pose(a, b));
}
BENCHMARK(BM_EvaluatePose);

}  // namespace
