#include <benchmark/benchmark.h>

#include <vector>

#include "userdp/geometry.hpp"
#include "userdp/random.hpp"

namespace {

using namespace userdp;

void BM_Fwht(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  RandomStream rng(1);
  std::vector<double> v(len);
  for (double& x : v) x = rng.gaussian();
  std::vector<double> buf(len);
  for (auto _ : state) {
    buf = v;
    fwht(buf);
    benchmark::DoNotOptimize(buf.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(len));
}
BENCHMARK(BM_Fwht)->RangeMultiplier(4)->Range(1 << 6, 1 << 16);

void BM_Rotate(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const RotationPlan plan = make_rotation(dim, 2);
  RandomStream rng(3);
  std::vector<double> v(dim);
  for (double& x : v) x = rng.gaussian();
  for (auto _ : state) {
    Point w = rotate(plan, v);
    benchmark::DoNotOptimize(w.data());
  }
}
BENCHMARK(BM_Rotate)->RangeMultiplier(4)->Range(1 << 6, 1 << 14);

void BM_SampleBall(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  RandomStream rng(4);
  const Point center(dim, 0.5);
  for (auto _ : state) {
    Point p = sample_ball(center, 1.0, rng);
    benchmark::DoNotOptimize(p.data());
  }
}
BENCHMARK(BM_SampleBall)->RangeMultiplier(4)->Range(1 << 4, 1 << 10);

void BM_CountCover(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  constexpr std::size_t kDim = 64;
  RandomStream rng(5);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(sample_ball(Point(kDim, 0.0), 1.0, rng));
  }
  const Point q = sample_ball(Point(kDim, 0.0), 1.0, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_cover(q, pts, 2.0));
  }
}
BENCHMARK(BM_CountCover)->RangeMultiplier(8)->Range(64, 4096);

}  // namespace
