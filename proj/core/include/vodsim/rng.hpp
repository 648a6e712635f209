#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace vodsim {

/// Seeded random stream. Each simulation concern (arrivals, churn, repair,
/// placement ties, ...) owns its own named stream so that changing one policy
/// never perturbs another's draws. Streams derived from the same seed but
/// different names never share state.
///
/// All transforms are implemented on top of the raw 64-bit engine output, so
/// a (seed, name) pair yields the same sequence on every platform.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view name);

  /// Uniform double in [0, 1) with 53-bit resolution.
  double uniform01();

  /// Exponential variate with the given mean (seconds, typically).
  /// Throws std::invalid_argument if mean <= 0.
  double exponential(double mean);

  /// Uniform integer in [0, bound), unbiased. bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Standard normal variate (Box-Muller).
  double normal01();

  /// Gamma variate, shape >= 1 (Marsaglia-Tsang). Used to aggregate sojourn
  /// times in the Monte Carlo lifetime estimator.
  double gamma(double shape, double scale);

 private:
  std::uint64_t next_u64() { return engine_(); }

  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

}  // namespace vodsim
