#include <benchmark/benchmark.h>

#include <vector>

#include "plap/driver.hpp"
#include "plap/radial.hpp"

using namespace plap;

static void BM_GreenApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const radial::BallDomain disk{2, 1.0};
  RadialFunction f{1.0, std::vector<double>(n, 1.0)};
  for (auto _ : state)
    benchmark::DoNotOptimize(radial::green_apply(f, disk, 3.0));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GreenApply)->Arg(101)->Arg(401)->Arg(1601);

static void BM_InverseIterationDisk(benchmark::State& state) {
  const radial::BallDomain disk{2, 1.0};
  ProblemParams P;
  P.p = 2.0;
  P.q = 1.99;
  P.mu = radial::kp(disk, P.p);
  for (auto _ : state)
    benchmark::DoNotOptimize(driver::run_algorithm1(disk, P));
}
BENCHMARK(BM_InverseIterationDisk)->Unit(benchmark::kMillisecond);

static void BM_NormalizedIterationTinyGap(benchmark::State& state) {
  const radial::BallDomain ball{3, 1.0};
  ProblemParams P;
  P.p = 3.0;
  P.q = 3.0 - 1e-5;
  for (auto _ : state)
    benchmark::DoNotOptimize(driver::run_algorithm2(ball, P));
}
BENCHMARK(BM_NormalizedIterationTinyGap)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
