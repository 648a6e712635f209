#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vodsim/config.hpp"
#include "vodsim/metrics.hpp"
#include "vodsim/reliability.hpp"

namespace vodsim {

/// Optional one-dimensional parameter sweep. The key is any numeric config
/// key, or "availability", which sets mean_up_s / mean_dn_s so that
/// A_up matches the value while the churn period mean_up + mean_dn is kept.
struct SweepSpec {
  std::string key;
  std::vector<double> values;

  bool active() const { return !key.empty(); }
};

SimConfig with_sweep_value(SimConfig base, const std::string& key, double value);

/// Runs one config once per seed and merges the reports.
MetricsReport run_seeds(const SimConfig& base, const std::vector<std::uint64_t>& seeds);

struct RunOptions {
  CliConfig config;
  SweepSpec sweep;
};

/// `run`: one run per seed, merged, CSVs written to out_dir. With a sweep,
/// each point lands in out_dir/point_<value>/ and the top-level playback.csv
/// collects one row per point. Returns 0 iff all outputs were written.
int cmd_run(const RunOptions& options, std::ostream& diag);

struct CompareOptions {
  CliConfig config;
  std::vector<std::string> strategies;
  SweepSpec sweep;
};

/// `compare`: same workload seeds across strategies; per-strategy output
/// directories plus a top-level compare.csv with one row per
/// (strategy, sweep point).
int cmd_compare(const CompareOptions& options, std::ostream& diag);

struct ReliabilityOptions {
  int n_min = 1;
  int n_max = 10;
  std::vector<double> gammas = {0.1, 1.0, 10.0};
  double fail_rate = 1.0 / 3600.0;
  // Monte Carlo trials per row; 0 leaves the Monte Carlo columns empty
  // (deep chains at high gamma make per-row sampling arbitrarily expensive).
  int trials = 0;
  std::uint64_t seed = 1;
  ReliabilityConstraints constraints{100, 86400.0, 125e6, 1'000'000'000ULL};
  std::string out_file;  // optional copy of the table
};

/// `reliability`: prints the (n, gamma) grid as CSV rows
/// n,gamma,mttf_exact_s,n_e,t_e_s,phi_bytes_per_s,mttf_mc_s,mc_ci_half_width_s.
int cmd_reliability(const ReliabilityOptions& options, std::ostream& out,
                    std::ostream& diag);

}  // namespace vodsim
