#include <benchmark/benchmark.h>

#include "vodsim/sim.hpp"

namespace {

// One desk-scale run end to end, dominated by the event loop.
void BM_SimulationRun(benchmark::State& state) {
  vodsim::SimConfig config;
  config.peers = 100;
  config.movies = 10;
  config.arrival_per_hour = 60.0;
  config.sim_duration_s = 3600.0;
  config.proxy_channels = 16;
  for (auto _ : state) {
    config.seed = static_cast<std::uint64_t>(state.iterations());
    benchmark::DoNotOptimize(vodsim::run_simulation(config));
  }
}
BENCHMARK(BM_SimulationRun)->Unit(benchmark::kMillisecond);

}  // namespace
