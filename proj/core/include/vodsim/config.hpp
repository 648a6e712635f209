#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vodsim/sim.hpp"

namespace vodsim {

/// Full experiment configuration: one simulation config plus the runner keys.
struct CliConfig {
  SimConfig sim;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::string out_dir = "out";
};

/// Parses a flat `key = value` file with '#' comments. Unknown keys and
/// invalid values raise std::invalid_argument naming the key.
CliConfig parse_config_file(const std::filesystem::path& path);

/// Applies one key/value pair (same keys as the config file). Used for both
/// file lines and command-line overrides.
void apply_override(CliConfig& config, const std::string& key, const std::string& value);

/// The documented key set, in echo order.
const std::vector<std::string>& config_keys();

/// Canonical `key = value` text of the effective simulation config, one key
/// per line, seed excluded. Identical configs produce identical echoes.
std::string config_echo(const SimConfig& config);

}  // namespace vodsim
