#include <benchmark/benchmark.h>

#include "pfode/models.hpp"
#include "pfode/steppers.hpp"

namespace {

const pfode::VectorField& love() {
  static const pfode::VectorField f =
      pfode::linear_love_field({0.12, 0.05, 6.1, -1.0, 0.5, 1.2, 0.8, 0.81});
  return f;
}

}  // namespace

// The memory sum makes each fractional segment O(n^2).
static void BM_CaputoSegment(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pfode::caputo_step_sequence(love(), {1.0, 1.0}, 20.0, n, 0.01, 0.9));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CaputoSegment)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Arg(4000)->Complexity(benchmark::oNSquared);

static void BM_ClassicalSegment(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pfode::classical_step_sequence(love(), {1.0, 1.0}, 0.0, n, 0.01));
  }
}
BENCHMARK(BM_ClassicalSegment)->Arg(2000);

static void BM_PiecewiseSolve(benchmark::State& state) {
  pfode::RegimeSchedule s;
  s.kernel = static_cast<pfode::FractionalKernel>(state.range(0));
  s.alpha = 0.92;
  const pfode::PiecewiseProblem p{s, love(), pfode::NoiseSpec{{0.05, 0.05}, 1}, {1.0, 1.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(pfode::solve_piecewise(p, 0.01));
  }
}
BENCHMARK(BM_PiecewiseSolve)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
