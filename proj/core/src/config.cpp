#include "vodsim/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vodsim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw std::invalid_argument("config key '" + key + "': invalid value '" + value + "'");
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) bad_value(key, value);
    return v;
  } catch (const std::invalid_argument&) {
    bad_value(key, value);
  } catch (const std::out_of_range&) {
    bad_value(key, value);
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) bad_value(key, value);
    return v;
  } catch (const std::invalid_argument&) {
    bad_value(key, value);
  } catch (const std::out_of_range&) {
    bad_value(key, value);
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  const long long v = parse_int(key, value);
  if (v < 0) bad_value(key, value);
  return static_cast<std::uint64_t>(v);
}

std::vector<std::uint64_t> parse_seed_list(const std::string& key, const std::string& value) {
  std::vector<std::uint64_t> seeds;
  std::string token;
  std::stringstream ss(value);
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    seeds.push_back(parse_u64(key, token));
  }
  if (seeds.empty()) bad_value(key, value);
  return seeds;
}

// Shortest representation that round-trips the double.
std::string render(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "peers", "serving_fraction", "movies", "zipf_skew", "arrival_per_hour",
      "movie_duration_s", "movie_size_bytes", "movie_blocks", "movie_channels",
      "mean_up_s", "mean_dn_s", "max_movies_per_peer", "uplink_ratio",
      "nonserving_uplink", "strategy", "placement", "batch_interval_s",
      "repair_gamma", "handoff_fraction", "chaining_latency_s", "weight_scale",
      "placement_round_width", "proxy_channels", "proxy_buffer_bytes",
      "sim_duration_s", "seeds", "out_dir"};
  return keys;
}

void apply_override(CliConfig& config, const std::string& key, const std::string& value) {
  SimConfig& s = config.sim;
  if (key == "peers") s.peers = static_cast<int>(parse_int(key, value));
  else if (key == "serving_fraction") s.serving_fraction = parse_double(key, value);
  else if (key == "movies") s.movies = static_cast<int>(parse_int(key, value));
  else if (key == "zipf_skew") s.zipf_skew = parse_double(key, value);
  else if (key == "arrival_per_hour") s.arrival_per_hour = parse_double(key, value);
  else if (key == "movie_duration_s") s.movie_duration_s = parse_double(key, value);
  else if (key == "movie_size_bytes") s.movie_size_bytes = parse_u64(key, value);
  else if (key == "movie_blocks") s.movie_blocks = static_cast<int>(parse_int(key, value));
  else if (key == "movie_channels") s.movie_channels = static_cast<int>(parse_int(key, value));
  else if (key == "mean_up_s") s.mean_up_s = parse_double(key, value);
  else if (key == "mean_dn_s") s.mean_dn_s = parse_double(key, value);
  else if (key == "max_movies_per_peer") s.max_movies_per_peer = static_cast<int>(parse_int(key, value));
  else if (key == "uplink_ratio") s.uplink_ratio = static_cast<int>(parse_int(key, value));
  else if (key == "nonserving_uplink") s.nonserving_uplink = static_cast<int>(parse_int(key, value));
  else if (key == "strategy") s.strategy = value;
  else if (key == "placement") s.placement = value;
  else if (key == "batch_interval_s") s.batch_interval_s = parse_double(key, value);
  else if (key == "repair_gamma") s.repair_gamma = parse_double(key, value);
  else if (key == "handoff_fraction") s.handoff_fraction = parse_double(key, value);
  else if (key == "chaining_latency_s") s.chaining_latency_s = parse_double(key, value);
  else if (key == "weight_scale") s.weight_scale = parse_double(key, value);
  else if (key == "placement_round_width") s.placement_round_width = static_cast<int>(parse_int(key, value));
  else if (key == "proxy_channels") s.proxy_channels = static_cast<int>(parse_int(key, value));
  else if (key == "proxy_buffer_bytes") s.proxy_buffer_bytes = parse_u64(key, value);
  else if (key == "sim_duration_s") s.sim_duration_s = parse_double(key, value);
  else if (key == "seeds") config.seeds = parse_seed_list(key, value);
  else if (key == "out_dir") config.out_dir = value;
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

CliConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file '" + path.string() + "'");
  }
  CliConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config file '" + path.string() + "' line " +
                                  std::to_string(line_no) + ": expected key = value");
    }
    apply_override(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

std::string config_echo(const SimConfig& c) {
  std::ostringstream out;
  out << "peers = " << c.peers << '\n';
  out << "serving_fraction = " << render(c.serving_fraction) << '\n';
  out << "movies = " << c.movies << '\n';
  out << "zipf_skew = " << render(c.zipf_skew) << '\n';
  out << "arrival_per_hour = " << render(c.arrival_per_hour) << '\n';
  out << "movie_duration_s = " << render(c.movie_duration_s) << '\n';
  out << "movie_size_bytes = " << c.movie_size_bytes << '\n';
  out << "movie_blocks = " << c.movie_blocks << '\n';
  out << "movie_channels = " << c.movie_channels << '\n';
  out << "mean_up_s = " << render(c.mean_up_s) << '\n';
  out << "mean_dn_s = " << render(c.mean_dn_s) << '\n';
  out << "max_movies_per_peer = " << c.max_movies_per_peer << '\n';
  out << "uplink_ratio = " << c.uplink_ratio << '\n';
  out << "nonserving_uplink = " << c.nonserving_uplink << '\n';
  out << "strategy = " << c.strategy << '\n';
  out << "placement = " << c.placement << '\n';
  out << "batch_interval_s = " << render(c.batch_interval_s) << '\n';
  out << "repair_gamma = " << render(c.repair_gamma) << '\n';
  out << "handoff_fraction = " << render(c.handoff_fraction) << '\n';
  out << "chaining_latency_s = " << render(c.chaining_latency_s) << '\n';
  out << "weight_scale = " << render(c.weight_scale) << '\n';
  out << "placement_round_width = " << c.placement_round_width << '\n';
  out << "proxy_channels = " << c.proxy_channels << '\n';
  out << "proxy_buffer_bytes = " << c.proxy_buffer_bytes << '\n';
  out << "sim_duration_s = " << render(c.sim_duration_s) << '\n';
  return out.str();
}

}  // namespace vodsim
