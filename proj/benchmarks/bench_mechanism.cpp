#include <benchmark/benchmark.h>

#include <vector>

#include "userdp/mechanism.hpp"
#include "userdp/random.hpp"
#include "userdp/synthdata.hpp"
#include "userdp/userlevel.hpp"

namespace {

using namespace userdp;

std::vector<Point> concentrated_instance(std::size_t n, std::size_t d,
                                         double r, std::uint64_t seed) {
  RandomStream rng(seed);
  const Point center(d, 0.25);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(sample_ball(center, r, rng));
  }
  return pts;
}

void BM_SingleRound(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  MechanismParams params;
  params.eps = 0.5;
  params.delta = 0.01;
  params.alpha = 0.1;
  params.r = 1.0;
  const std::vector<Point> pts = concentrated_instance(n, 16, params.r, 11);
  RandomStream rng(12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(single_round(pts, params, rng));
  }
}
BENCHMARK(BM_SingleRound)->RangeMultiplier(4)->Range(64, 4096);

void BM_Estimate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  MechanismParams params;
  params.eps = 0.5;
  params.delta = 0.01;
  params.alpha = 0.1;
  params.r = 1.0;
  const std::vector<Point> pts = concentrated_instance(n, 16, params.r, 13);
  RandomStream rng(14);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dp_estimate_1(pts, params, rng));
  }
}
BENCHMARK(BM_Estimate)->RangeMultiplier(2)->Range(256, 2048);

void BM_UserEstimate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  DataSpec spec;
  spec.n = n;
  spec.m = 20;
  spec.d = 32;
  spec.family = Family::kUniformBall;
  spec.r = 1.0;
  spec.seed = 15;
  const UserDataset data = generate(spec);
  UserLevelParams params;
  params.block.eps = 0.5;
  params.block.delta = 1e-4;
  params.block.alpha = 0.1;
  params.block.r = 1.0;
  RandomStream rng(16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dp_estimate_user(data, params, rng));
  }
}
BENCHMARK(BM_UserEstimate)->Arg(256)->Arg(512)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
