#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vodsim/commands.hpp"

namespace {

// Every config key is also a flag, collected as raw strings and pushed
// through the same apply_override path the config file uses.
void add_config_flags(CLI::App* app, std::map<std::string, std::string>* values) {
  for (const std::string& key : vodsim::config_keys()) {
    app->add_option_function<std::string>(
        "--" + key,
        [values, key](const std::string& v) { (*values)[key] = v; },
        "override config key " + key);
  }
}

vodsim::CliConfig assemble_config(const std::string& config_path,
                                  const std::map<std::string, std::string>& overrides) {
  vodsim::CliConfig config;
  if (!config_path.empty()) {
    config = vodsim::parse_config_file(config_path);
  }
  if (const char* env_dir = std::getenv("VODSIM_OUT_DIR")) {
    config.out_dir = env_dir;
  }
  for (const auto& [key, value] : overrides) {
    vodsim::apply_override(config, key, value);
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster VoD replication simulator and reliability analyzer"};
  app.require_subcommand(1);

  std::string config_path;
  std::map<std::string, std::string> overrides;
  std::string sweep_key;
  std::vector<double> sweep_values;

  CLI::App* run = app.add_subcommand("run", "simulate one strategy and write CSV reports");
  run->add_option("--config", config_path, "key = value config file");
  add_config_flags(run, &overrides);
  run->add_option("--sweep_key", sweep_key, "config key to sweep (or 'availability')");
  run->add_option("--sweep_values", sweep_values, "sweep points")->delimiter(',');

  std::vector<std::string> strategies;
  CLI::App* compare = app.add_subcommand("compare", "run several strategies on identical workloads");
  compare->add_option("--config", config_path, "key = value config file");
  add_config_flags(compare, &overrides);
  compare->add_option("--strategies", strategies, "strategies to compare")
      ->delimiter(',')
      ->required();
  compare->add_option("--sweep_key", sweep_key, "config key to sweep (or 'availability')");
  compare->add_option("--sweep_values", sweep_values, "sweep points")->delimiter(',');

  vodsim::ReliabilityOptions rel;
  CLI::App* reliability = app.add_subcommand("reliability", "CTMC replica lifetime table");
  reliability->add_option("--n_min", rel.n_min, "smallest replica count");
  reliability->add_option("--n_max", rel.n_max, "largest replica count");
  reliability->add_option("--gamma", rel.gammas, "repair ratios mu/lambda")->delimiter(',');
  reliability->add_option("--fail_rate", rel.fail_rate, "replica failure rate lambda (1/s)");
  reliability->add_option("--trials", rel.trials, "Monte Carlo trials per row (0 = skip)");
  reliability->add_option("--seed", rel.seed, "Monte Carlo seed");
  reliability->add_option("--replica_bytes", rel.constraints.replica_bytes, "replica size B");
  reliability->add_option("--max_replicas", rel.constraints.max_replicas, "eta_max");
  reliability->add_option("--max_repair_time_s", rel.constraints.max_repair_time_s, "tau_max");
  reliability->add_option("--max_bandwidth", rel.constraints.max_bandwidth_Bps, "phi_max (B/s)");
  reliability->add_option("--out", rel.out_file, "also write the table to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      vodsim::RunOptions options;
      options.config = assemble_config(config_path, overrides);
      options.sweep = {sweep_key, sweep_values};
      return vodsim::cmd_run(options, std::cerr);
    }
    if (compare->parsed()) {
      vodsim::CompareOptions options;
      options.config = assemble_config(config_path, overrides);
      options.strategies = strategies;
      options.sweep = {sweep_key, sweep_values};
      return vodsim::cmd_compare(options, std::cerr);
    }
    if (reliability->parsed()) {
      return vodsim::cmd_reliability(rel, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
