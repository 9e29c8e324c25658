#include <benchmark/benchmark.h>

#include <random>

#include "plap/fem2d.hpp"

using namespace plap;

namespace {

GridFunction2D random_state(int cells, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  GridFunction2D u{SquareMesh{cells}};
  for (int iy = 1; iy < cells; ++iy)
    for (int ix = 1; ix < cells; ++ix) u.at(ix, iy) = dist(rng);
  return u;
}

}  // namespace

static void BM_Residual(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto u = random_state(n, 42);
  GridFunction2D f{SquareMesh{n}};
  for (double& v : f.values) v = 1.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(fem2d::residual(u, f, 3.0, 1e-5));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Residual)->Arg(32)->Arg(64)->Arg(128);

static void BM_TorsionNewton(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  GridFunction2D f{SquareMesh{n}}, zero{SquareMesh{n}};
  for (double& v : f.values) v = 1.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(fem2d::newton_solve(f, zero, 3.0, 1e-5, 1e-8, 60));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TorsionNewton)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_SquareEigenpair(benchmark::State& state) {
  ProblemParams P;
  P.p = 2.0;
  P.q = 1.99;
  P.epsilon = 1e-5;
  for (auto _ : state)
    benchmark::DoNotOptimize(fem2d::algorithm2_square(SquareMesh{32}, P));
}
BENCHMARK(BM_SquareEigenpair)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
