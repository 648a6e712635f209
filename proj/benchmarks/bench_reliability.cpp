#include <benchmark/benchmark.h>

#include "vodsim/reliability.hpp"

namespace {

void BM_MeanTimeToFailure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        vodsim::mean_time_to_failure({n, 1.0 / 3600.0, 1.0 / 3600.0}));
  }
}
BENCHMARK(BM_MeanTimeToFailure)->Arg(5)->Arg(20)->Arg(100);

void BM_MonteCarloLifetime(benchmark::State& state) {
  vodsim::RngStream stream(7, "bench-mc");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        vodsim::monte_carlo_lifetime({n, 1.0, 1.0}, 1000, stream));
  }
}
BENCHMARK(BM_MonteCarloLifetime)->Arg(2)->Arg(5);

}  // namespace
