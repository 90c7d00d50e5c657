#include <benchmark/benchmark.h>

#include "pfode/mlf.hpp"

// Series route near the origin.
static void BM_MittagLefflerSeries(benchmark::State& state) {
  const double alpha = 0.9;
  double z = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pfode::mittag_leffler(alpha, z));
    z = z < -4.0 ? -1.0 : z - 0.01;
  }
}
BENCHMARK(BM_MittagLefflerSeries);

// Integral route far out on the negative axis.
static void BM_MittagLefflerIntegral(benchmark::State& state) {
  const double alpha = 0.7;
  double z = -40.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pfode::mittag_leffler(alpha, z));
    z = z < -90.0 ? -40.0 : z - 0.1;
  }
}
BENCHMARK(BM_MittagLefflerIntegral);
