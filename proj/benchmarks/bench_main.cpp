// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "gcpreset/law.hpp"
#include "gcpreset/simulate.hpp"
#include "gcpreset/specfun.hpp"

using namespace gcpreset;

static void BM_ExpIntegralE1(benchmark::State& state) {
  const double x = state.range(0) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(exp_integral_e1(x));
}
BENCHMARK(BM_ExpIntegralE1)->Arg(1)->Arg(5)->Arg(15)->Arg(100)->Arg(3000);

static void BM_GenGamma0(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gen_gamma0(0.37, 4.1));
}
BENCHMARK(BM_GenGamma0);

static void BM_SubDensity(benchmark::State& state) {
  const MotionParams p(1.0, 2.0, 1.0, -1.0);
  double x = -1.4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(subdensity(1, 1, x, 1.5, p).ac);
    x += 0.01;
    if (x > 1.4) x = -1.4;
  }
}
BENCHMARK(BM_SubDensity);

static void BM_Pdf(benchmark::State& state) {
  const MotionParams p(1.0, 2.0, 4.0, 2.0);
  const auto start = VelocityStart::random(0.3);
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdf(x, 1.5, start, p).ac);
    x += 0.01;
    if (x > 5.9) x = 0.1;
  }
}
BENCHMARK(BM_Pdf);

static void BM_Mgf(benchmark::State& state) {
  const MotionParams p(1.0, 2.0, 1.0, -1.0);
  for (auto _ : state) benchmark::DoNotOptimize(mgf(0.8, 1.5, 1, p));
}
BENCHMARK(BM_Mgf);

static void BM_SimulatePath(benchmark::State& state) {
  const MotionParams p(1.0, 2.0, 1.0, -1.0);
  const auto start = VelocityStart::fixed(1);
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_path(p, start, 1.5, i++, 7).position);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SimulatePath);

static void BM_RunBatch(benchmark::State& state) {
  const MotionParams p(1.0, 2.0, 1.0, -1.0);
  const auto start = VelocityStart::fixed(1);
  const SimConfig cfg{1.5, static_cast<std::uint64_t>(state.range(0)), 7,
                      static_cast<unsigned>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(run_batch(p, start, cfg).summary.mean);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunBatch)->Args({100000, 1})->Args({100000, 2})->Args({100000, 4});

BENCHMARK_MAIN();
