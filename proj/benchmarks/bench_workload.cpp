#include <benchmark/benchmark.h>

#include "vodsim/workload.hpp"

namespace {

void BM_ZipfPopularity(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(vodsim::zipf_popularity(m, 0.271));
  }
}
BENCHMARK(BM_ZipfPopularity)->Arg(20)->Arg(1000)->Arg(10000);

void BM_ExponentialStream(benchmark::State& state) {
  vodsim::RngStream stream(7, "bench-exp");
  for (auto _ : state) {
    benchmark::DoNotOptimize(stream.exponential(3600.0));
  }
}
BENCHMARK(BM_ExponentialStream);

}  // namespace
