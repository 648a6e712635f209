#include "vodsim/reliability.hpp"

#include <cmath>
#include <stdexcept>

namespace vodsim {

void validate(const CtmcParams& params) {
  if (params.n < 1) throw std::invalid_argument("ctmc: n must be >= 1");
  if (!(params.fail_rate > 0.0)) throw std::invalid_argument("ctmc: fail_rate must be > 0");
  if (params.repair_rate < 0.0) throw std::invalid_argument("ctmc: repair_rate must be >= 0");
}

std::vector<std::vector<double>> build_generator(const CtmcParams& params) {
  validate(params);
  const int n = params.n;
  std::vector<std::vector<double>> q(static_cast<std::size_t>(n + 1),
                                     std::vector<double>(static_cast<std::size_t>(n + 1), 0.0));
  for (int k = 1; k <= n; ++k) {
    const double down = k * params.fail_rate;
    q[k][k - 1] = down;
    double exit = down;
    if (k < n) {
      const double up = (n - k) * params.repair_rate;
      q[k][k + 1] = up;
      exit += up;
    }
    q[k][k] = -exit;
  }
  return q;
}

double mean_time_to_failure(const CtmcParams& params) {
  validate(params);
  const int n = params.n;
  const double lambda = params.fail_rate;
  const double mu = params.repair_rate;
  // d_k = T_k - T_{k-1}; eliminating the first-step system gives
  //   d_n = 1/(n lambda),  d_k = (1 + (n-k) mu d_{k+1}) / (k lambda).
  double d = 1.0 / (n * lambda);
  double total = d;
  for (int k = n - 1; k >= 1; --k) {
    d = (1.0 + (n - k) * mu * d) / (k * lambda);
    total += d;
  }
  if (!std::isfinite(total) || total <= 0.0) {
    throw std::runtime_error("mean_time_to_failure: solve produced a non-finite result");
  }
  return total;
}

std::vector<double> absorption_path_probabilities(const CtmcParams& params) {
  validate(params);
  const int n = params.n;
  std::vector<double> q(static_cast<std::size_t>(n + 1), 0.0);
  q[0] = 1.0;
  q[n] = 0.0;
  if (n == 1) return q;
  if (params.repair_rate == 0.0) {
    // No repair: every interior state drifts straight down.
    for (int k = 1; k < n; ++k) q[k] = 1.0;
    return q;
  }
  // Difference form of the recurrence: with delta_k = Q_{k+1} - Q_k,
  // delta_k = delta_0 * prod_{j=1..k} (j lambda) / ((n-j) mu), and the
  // boundaries force sum of deltas to equal -1.
  std::vector<double> prod(static_cast<std::size_t>(n), 1.0);
  for (int k = 1; k < n; ++k) {
    prod[k] = prod[k - 1] * (k * params.fail_rate) / ((n - k) * params.repair_rate);
  }
  double sum = 0.0;
  for (double p : prod) sum += p;
  const double delta0 = -1.0 / sum;
  for (int k = 1; k < n; ++k) {
    q[k] = q[k - 1] + delta0 * prod[k - 1];
  }
  return q;
}

double absorption_path_probability(const CtmcParams& params, int k) {
  if (k < 0 || k > params.n) {
    throw std::invalid_argument("absorption_path_probability: k out of range");
  }
  return absorption_path_probabilities(params)[static_cast<std::size_t>(k)];
}

double qstar_closed_form(int n, double gamma) {
  if (n < 1) throw std::invalid_argument("qstar_closed_form: n must be >= 1");
  if (gamma < 0.0) throw std::invalid_argument("qstar_closed_form: gamma must be >= 0");
  double sum = 0.0;
  double gamma_pow = 1.0;
  for (int k = 0; k <= n - 1; ++k) {
    // C(n-1, k) computed incrementally.
    double binom = 1.0;
    for (int j = 0; j < k; ++j) binom = binom * (n - 1 - j) / (j + 1);
    sum += gamma_pow / binom;
    gamma_pow *= gamma;
  }
  return sum;
}

LifetimeDecomposition lifetime_decomposition(const CtmcParams& params) {
  validate(params);
  LifetimeDecomposition d;
  d.total_lifetime_s = mean_time_to_failure(params);
  const double qstar = qstar_closed_form(params.n, params.gamma());
  d.expected_states = 1.0 / qstar;
  d.expected_state_time = d.total_lifetime_s / d.expected_states;
  return d;
}

MonteCarloEstimate monte_carlo_lifetime(const CtmcParams& params, int trials,
                                        RngStream& stream) {
  validate(params);
  if (trials < 1) throw std::invalid_argument("monte_carlo_lifetime: trials must be >= 1");
  const int n = params.n;
  const double lambda = params.fail_rate;
  const double mu = params.repair_rate;

  std::vector<double> p_down(static_cast<std::size_t>(n + 1), 1.0);
  std::vector<double> exit_rate(static_cast<std::size_t>(n + 1), 0.0);
  for (int k = 1; k <= n; ++k) {
    const double down = k * lambda;
    const double up = k < n ? (n - k) * mu : 0.0;
    exit_rate[k] = down + up;
    p_down[k] = down / (down + up);
  }

  std::vector<std::uint64_t> visits(static_cast<std::size_t>(n + 1), 0);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::fill(visits.begin(), visits.end(), 0);
    int k = n;
    ++visits[k];
    while (k > 0) {
      k += stream.uniform01() < p_down[k] ? -1 : 1;
      if (k > 0) ++visits[k];
    }
    double time = 0.0;
    for (int s = 1; s <= n; ++s) {
      const std::uint64_t v = visits[s];
      if (v == 0) continue;
      const double scale = 1.0 / exit_rate[s];
      if (v < 16) {
        // Few sojourns: draw them directly.
        for (std::uint64_t i = 0; i < v; ++i) time += stream.exponential(scale);
      } else {
        // Sum of v iid Exp(rate) is Gamma(v, 1/rate), drawn in one shot.
        time += stream.gamma(static_cast<double>(v), scale);
      }
    }
    sum += time;
    sum_sq += time * time;
  }
  MonteCarloEstimate est;
  est.trials = trials;
  est.mean_s = sum / trials;
  if (trials > 1) {
    const double var = (sum_sq - sum * sum / trials) / (trials - 1);
    est.ci_half_width_s = 1.959963985 * std::sqrt(std::max(0.0, var) / trials);
  }
  return est;
}

RepairBandwidth repair_bandwidth(int replica_count,
                                 const ReliabilityConstraints& constraints,
                                 const CtmcParams& params) {
  if (replica_count < 0) {
    throw std::invalid_argument("repair_bandwidth: replica count must be >= 0");
  }
  RepairBandwidth out;
  const double lambda = params.fail_rate;
  const double mu = params.repair_rate;
  if (replica_count == 0) {
    out.bytes_per_s = 0.0;
    out.bandwidth_ok = true;
    out.replica_count_ok = true;
    out.repair_time_ok = true;
    return out;
  }
  if (mu > 0.0) {
    const double cycle_s = 1.0 / lambda + 1.0 / mu;
    out.bytes_per_s = replica_count * static_cast<double>(constraints.replica_bytes) / cycle_s;
    out.repair_time_ok = 1.0 / mu <= constraints.max_repair_time_s;
  } else {
    out.bytes_per_s = 0.0;  // the cycle never completes
    out.repair_time_ok = !std::isfinite(constraints.max_repair_time_s) ? true : false;
  }
  out.bandwidth_ok = out.bytes_per_s <= constraints.max_bandwidth_Bps;
  out.replica_count_ok = replica_count <= constraints.max_replicas;
  return out;
}

}  // namespace vodsim
