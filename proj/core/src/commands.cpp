#include "vodsim/commands.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vodsim {

namespace {

std::string render(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string s;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i > 0) s += ';';
    s += std::to_string(seeds[i]);
  }
  return s;
}

}  // namespace

SimConfig with_sweep_value(SimConfig base, const std::string& key, double value) {
  if (key == "availability") {
    if (value <= 0.0 || value >= 1.0) {
      throw std::invalid_argument("sweep key 'availability': value must be in (0, 1)");
    }
    const double period = base.mean_up_s + base.mean_dn_s;
    base.mean_up_s = value * period;
    base.mean_dn_s = (1.0 - value) * period;
    return base;
  }
  CliConfig wrapper;
  wrapper.sim = base;
  apply_override(wrapper, key, render(value));
  return wrapper.sim;
}

MetricsReport run_seeds(const SimConfig& base, const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw std::invalid_argument("config key 'seeds': at least one seed required");
  std::vector<MetricsReport> reports;
  reports.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    SimConfig config = base;
    config.seed = seed;
    reports.push_back(run_simulation(config));
  }
  return merge(reports);
}

int cmd_run(const RunOptions& options, std::ostream& diag) {
  try {
    const CliConfig& cli = options.config;
    validate(cli.sim);
    const std::filesystem::path out_dir = cli.out_dir;

    if (!options.sweep.active()) {
      const MetricsReport merged = run_seeds(cli.sim, cli.seeds);
      write_csv_files(merged, out_dir);
      diag << "wrote " << out_dir.string() << " (" << cli.seeds.size() << " seeds)\n";
      return 0;
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    std::ofstream playback(out_dir / "playback.csv", std::ios::binary);
    if (!playback) {
      diag << "error: cannot write " << (out_dir / "playback.csv").string() << "\n";
      return 1;
    }
    playback << "sweep_var,prob\n";
    for (double value : options.sweep.values) {
      const SimConfig point = with_sweep_value(cli.sim, options.sweep.key, value);
      MetricsReport merged = run_seeds(point, cli.seeds);
      merged.sweep_var = value;
      write_csv_files(merged, out_dir / ("point_" + render(value)));
      if (merged.has_playback_data) {
        playback << fixed6(value) << ',' << fixed6(merged.success_playback_prob) << '\n';
      }
      diag << options.sweep.key << " = " << render(value) << ": "
           << (merged.has_playback_data ? fixed6(merged.success_playback_prob)
                                        : std::string("no_data"))
           << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_compare(const CompareOptions& options, std::ostream& diag) {
  try {
    if (options.strategies.size() < 2) {
      throw std::invalid_argument("compare: need at least two strategies");
    }
    for (const std::string& name : options.strategies) {
      if (!strategy_from_name(name)) {
        std::string names;
        for (const std::string& s : strategy_names()) names += (names.empty() ? "" : " | ") + s;
        throw std::invalid_argument("compare: unknown strategy '" + name + "', valid: " + names);
      }
    }
    const CliConfig& cli = options.config;
    const std::filesystem::path out_dir = cli.out_dir;
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);

    SweepSpec sweep = options.sweep;
    if (!sweep.active()) {
      sweep.key = "arrival_per_hour";
      sweep.values = {cli.sim.arrival_per_hour};
    }

    std::ofstream table(out_dir / "compare.csv", std::ios::binary);
    if (!table) {
      diag << "error: cannot write " << (out_dir / "compare.csv").string() << "\n";
      return 1;
    }
    table << "strategy," << sweep.key
          << ",success_playback_prob,admitted,rejected,immediate,chained,"
             "failover_count,seeds\n";

    for (double value : sweep.values) {
      for (const std::string& name : options.strategies) {
        SimConfig point = with_sweep_value(cli.sim, sweep.key, value);
        point.strategy = name;
        validate(point);
        MetricsReport merged = run_seeds(point, cli.seeds);
        merged.sweep_var = value;
        write_csv_files(merged, out_dir / name / ("point_" + render(value)));
        table << name << ',' << fixed6(value) << ','
              << (merged.has_playback_data ? fixed6(merged.success_playback_prob)
                                           : std::string("no_data"))
              << ',' << merged.admitted << ',' << merged.rejected << ','
              << merged.immediate << ',' << merged.chained << ','
              << merged.failover_count << ',' << join_seeds(merged.seeds) << '\n';
        diag << name << " @ " << sweep.key << " = " << render(value) << ": "
             << (merged.has_playback_data ? fixed6(merged.success_playback_prob)
                                          : std::string("no_data"))
             << "\n";
      }
    }
    return 0;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_reliability(const ReliabilityOptions& options, std::ostream& out,
                    std::ostream& diag) {
  try {
    if (options.n_min < 1 || options.n_max < options.n_min) {
      throw std::invalid_argument("reliability: invalid n range");
    }
    if (options.gammas.empty()) {
      throw std::invalid_argument("reliability: gamma list must be nonempty");
    }
    if (!(options.fail_rate > 0.0)) {
      throw std::invalid_argument("reliability: fail_rate must be > 0");
    }
    if (options.trials < 0) {
      throw std::invalid_argument("reliability: trials must be >= 0");
    }

    std::ostringstream table;
    table << "n,gamma,mttf_exact_s,n_e,t_e_s,phi_bytes_per_s,mttf_mc_s,"
             "mc_ci_half_width_s\n";
    RngStream stream(options.seed, "reliability-mc");
    for (int n = options.n_min; n <= options.n_max; ++n) {
      for (double gamma : options.gammas) {
        const CtmcParams params{n, options.fail_rate, gamma * options.fail_rate};
        const LifetimeDecomposition d = lifetime_decomposition(params);
        const RepairBandwidth phi = repair_bandwidth(n, options.constraints, params);
        table << n << ',' << fixed6(gamma) << ',' << fixed6(d.total_lifetime_s) << ','
              << fixed6(d.expected_states) << ',' << fixed6(d.expected_state_time)
              << ',' << fixed6(phi.bytes_per_s) << ',';
        if (options.trials > 0) {
          const MonteCarloEstimate mc = monte_carlo_lifetime(params, options.trials, stream);
          table << fixed6(mc.mean_s) << ',' << fixed6(mc.ci_half_width_s);
        } else {
          table << ',';
        }
        table << '\n';
      }
    }

    out << table.str();
    if (!options.out_file.empty()) {
      std::ofstream file(options.out_file, std::ios::binary);
      if (!file) {
        diag << "error: cannot write " << options.out_file << "\n";
        return 1;
      }
      file << table.str();
    }
    return 0;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace vodsim
