#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace vodsim {

struct LifetimeAccumulator {
  double total_s = 0.0;
  std::uint64_t samples = 0;

  double mean_s() const { return samples > 0 ? total_s / samples : 0.0; }
};

/// One run's (or a merged set of runs') experiment outputs.
struct MetricsReport {
  std::uint64_t runs = 1;  // merge weight

  // Replica distribution per movie rank at end of run; fractional when merged.
  std::vector<double> replicas_per_movie;

  bool has_playback_data = false;
  double success_playback_prob = 0.0;

  std::uint64_t admitted = 0;
  std::uint64_t rejected = 0;
  std::uint64_t immediate = 0;  // served without ever touching a serving peer
  std::uint64_t chained = 0;    // streamed from a serving peer at some point
  std::uint64_t successes = 0;
  std::uint64_t failures = 0;
  std::uint64_t still_active = 0;
  std::uint64_t failover_count = 0;
  std::uint64_t batch_copies = 0;
  std::uint64_t repair_copies = 0;

  // Per batch window, fraction of capacity in use.
  std::vector<double> window_start_s;
  std::vector<double> bandwidth_util;
  std::vector<double> buffer_util;

  // Observed replica-set lifetimes, grouped by the epoch's replica count and
  // per movie. A sample is the span from a movie's first placed replica to
  // the loss of its last one.
  std::map<int, LifetimeAccumulator> lifetime_by_n;
  std::vector<LifetimeAccumulator> lifetime_per_movie;

  double replica_fail_rate = 0.0;    // lambda implied by serving-peer churn
  double replica_repair_rate = 0.0;  // mu from the configured repair ratio

  double sweep_var = 0.0;  // x coordinate for playback.csv

  std::vector<std::uint64_t> seeds;
  std::string config_echo;    // canonical, seed-independent key = value text
  std::uint64_t config_hash = 0;
};

/// Weighted average of scalars and series, summed counts, pooled lifetime
/// accumulators, seeds concatenated and sorted. All inputs must share a
/// config hash; throws std::invalid_argument otherwise.
MetricsReport merge(const std::vector<MetricsReport>& reports);

/// Writes replicas.csv, playback.csv, lifetime.csv, utilization.csv,
/// summary.csv and a gnuplot script into the directory (created if needed).
/// Formatting is fixed 6-decimal, LF line endings, headers always present.
void write_csv_files(const MetricsReport& report, const std::filesystem::path& dir);

/// "%.6f" rendering used for every real value in the CSV files.
std::string fixed6(double value);

std::uint64_t hash_echo(const std::string& echo);

}  // namespace vodsim
