#include "vodsim/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "vodsim/reliability.hpp"

namespace vodsim {

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

std::uint64_t hash_echo(const std::string& echo) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : echo) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

MetricsReport merge(const std::vector<MetricsReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("merge: no reports");
  for (const MetricsReport& r : reports) {
    if (r.config_hash != reports.front().config_hash) {
      throw std::invalid_argument("merge: mismatched configs");
    }
  }

  MetricsReport out;
  out.runs = 0;
  out.config_echo = reports.front().config_echo;
  out.config_hash = reports.front().config_hash;
  out.replica_fail_rate = reports.front().replica_fail_rate;
  out.replica_repair_rate = reports.front().replica_repair_rate;
  out.sweep_var = reports.front().sweep_var;

  std::uint64_t playback_weight = 0;
  double total_weight = 0.0;
  for (const MetricsReport& r : reports) {
    const double w = static_cast<double>(r.runs);
    out.runs += r.runs;
    total_weight += w;

    out.admitted += r.admitted;
    out.rejected += r.rejected;
    out.immediate += r.immediate;
    out.chained += r.chained;
    out.successes += r.successes;
    out.failures += r.failures;
    out.still_active += r.still_active;
    out.failover_count += r.failover_count;
    out.batch_copies += r.batch_copies;
    out.repair_copies += r.repair_copies;

    if (r.has_playback_data) {
      out.success_playback_prob += r.success_playback_prob * w;
      playback_weight += r.runs;
    }

    if (out.replicas_per_movie.size() < r.replicas_per_movie.size()) {
      out.replicas_per_movie.resize(r.replicas_per_movie.size(), 0.0);
    }
    for (std::size_t i = 0; i < r.replicas_per_movie.size(); ++i) {
      out.replicas_per_movie[i] += r.replicas_per_movie[i] * w;
    }

    if (out.window_start_s.size() < r.window_start_s.size()) {
      out.window_start_s = r.window_start_s;
      out.bandwidth_util.resize(r.bandwidth_util.size(), 0.0);
      out.buffer_util.resize(r.buffer_util.size(), 0.0);
    }
    for (std::size_t i = 0; i < r.bandwidth_util.size(); ++i) {
      out.bandwidth_util[i] += r.bandwidth_util[i] * w;
      out.buffer_util[i] += r.buffer_util[i] * w;
    }

    for (const auto& [n, acc] : r.lifetime_by_n) {
      out.lifetime_by_n[n].total_s += acc.total_s;
      out.lifetime_by_n[n].samples += acc.samples;
    }
    if (out.lifetime_per_movie.size() < r.lifetime_per_movie.size()) {
      out.lifetime_per_movie.resize(r.lifetime_per_movie.size());
    }
    for (std::size_t i = 0; i < r.lifetime_per_movie.size(); ++i) {
      out.lifetime_per_movie[i].total_s += r.lifetime_per_movie[i].total_s;
      out.lifetime_per_movie[i].samples += r.lifetime_per_movie[i].samples;
    }

    out.seeds.insert(out.seeds.end(), r.seeds.begin(), r.seeds.end());
  }

  if (playback_weight > 0) {
    out.success_playback_prob /= static_cast<double>(playback_weight);
    out.has_playback_data = true;
  }
  for (double& v : out.replicas_per_movie) v /= total_weight;
  for (double& v : out.bandwidth_util) v /= total_weight;
  for (double& v : out.buffer_util) v /= total_weight;
  std::sort(out.seeds.begin(), out.seeds.end());
  return out;
}

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
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

void write_csv_files(const MetricsReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);

  {
    auto out = open_csv(dir / "replicas.csv");
    out << "movie_rank,count\n";
    for (std::size_t i = 0; i < report.replicas_per_movie.size(); ++i) {
      out << (i + 1) << ',' << fixed6(report.replicas_per_movie[i]) << '\n';
    }
  }
  {
    auto out = open_csv(dir / "playback.csv");
    out << "sweep_var,prob\n";
    if (report.has_playback_data) {
      out << fixed6(report.sweep_var) << ',' << fixed6(report.success_playback_prob) << '\n';
    }
  }
  {
    auto out = open_csv(dir / "lifetime.csv");
    out << "n,gamma,mttf_analytic,mttf_empirical\n";
    if (report.replica_fail_rate > 0.0) {
      const double gamma = report.replica_repair_rate / report.replica_fail_rate;
      for (const auto& [n, acc] : report.lifetime_by_n) {
        if (n < 1 || acc.samples == 0) continue;
        const double analytic = mean_time_to_failure(
            {n, report.replica_fail_rate, report.replica_repair_rate});
        out << n << ',' << fixed6(gamma) << ',' << fixed6(analytic) << ','
            << fixed6(acc.mean_s()) << '\n';
      }
    }
  }
  {
    auto out = open_csv(dir / "utilization.csv");
    out << "window_start_s,bandwidth_frac,buffer_frac\n";
    for (std::size_t i = 0; i < report.window_start_s.size(); ++i) {
      out << fixed6(report.window_start_s[i]) << ',' << fixed6(report.bandwidth_util[i])
          << ',' << fixed6(report.buffer_util[i]) << '\n';
    }
  }
  {
    auto out = open_csv(dir / "summary.csv");
    out << "key,value\n";
    out << "runs," << report.runs << '\n';
    out << "admitted," << report.admitted << '\n';
    out << "rejected," << report.rejected << '\n';
    out << "immediate," << report.immediate << '\n';
    out << "chained," << report.chained << '\n';
    out << "successes," << report.successes << '\n';
    out << "failures," << report.failures << '\n';
    out << "still_active," << report.still_active << '\n';
    out << "failover_count," << report.failover_count << '\n';
    out << "batch_copies," << report.batch_copies << '\n';
    out << "repair_copies," << report.repair_copies << '\n';
    out << "success_playback_prob,"
        << (report.has_playback_data ? fixed6(report.success_playback_prob)
                                     : std::string("no_data"))
        << '\n';
    out << "sweep_var," << fixed6(report.sweep_var) << '\n';
    out << "replica_fail_rate," << fixed6(report.replica_fail_rate) << '\n';
    out << "replica_repair_rate," << fixed6(report.replica_repair_rate) << '\n';
    out << "seeds," << join_seeds(report.seeds) << '\n';
    out << "config_hash," << report.config_hash << '\n';
    // Effective configuration, one key per row.
    std::size_t pos = 0;
    while (pos < report.config_echo.size()) {
      std::size_t eol = report.config_echo.find('\n', pos);
      if (eol == std::string::npos) eol = report.config_echo.size();
      const std::string line = report.config_echo.substr(pos, eol - pos);
      pos = eol + 1;
      const std::size_t eq = line.find(" = ");
      if (eq == std::string::npos) continue;
      out << "config." << line.substr(0, eq) << ',' << line.substr(eq + 3) << '\n';
    }
  }
  {
    auto out = open_csv(dir / "plots.gp");
    out << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set terminal pngcairo size 900,600\n"
        << "set output 'replicas.png'\n"
        << "set xlabel 'movie rank'; set ylabel 'replicas'\n"
        << "plot 'replicas.csv' using 1:2 with linespoints\n"
        << "set output 'playback.png'\n"
        << "set xlabel 'sweep variable'; set ylabel 'success playback probability'\n"
        << "plot 'playback.csv' using 1:2 with linespoints\n"
        << "set output 'utilization.png'\n"
        << "set xlabel 'window start (s)'; set ylabel 'fraction of capacity'\n"
        << "plot 'utilization.csv' using 1:2 with lines title 'bandwidth', \\\n"
        << "     'utilization.csv' using 1:3 with lines title 'buffer'\n"
        << "set output 'lifetime.png'\n"
        << "set xlabel 'replicas n'; set ylabel 'mean lifetime (s)'\n"
        << "plot 'lifetime.csv' using 1:3 with linespoints title 'analytic', \\\n"
        << "     'lifetime.csv' using 1:4 with points title 'empirical'\n";
  }
}

}  // namespace vodsim
