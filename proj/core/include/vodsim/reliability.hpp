#pragma once

#include <cstdint>
#include <vector>

#include "vodsim/rng.hpp"

namespace vodsim {

/// Birth-death chain over replica counts {0..n}. State k loses a replica at
/// rate k*fail_rate and regains one at rate (n-k)*repair_rate; state 0 is
/// absorbing. gamma = repair_rate / fail_rate.
struct CtmcParams {
  int n = 1;               // initial (and maximum) replica count
  double fail_rate = 0.0;  // lambda, per second
  double repair_rate = 0.0;  // mu, per second

  double gamma() const { return repair_rate / fail_rate; }
};

/// Throws std::invalid_argument when n < 1, fail_rate <= 0 or repair_rate < 0.
void validate(const CtmcParams& params);

/// Dense (n+1)x(n+1) generator. Row 0 is all zeros (absorbing); every other
/// row sums to zero with the diagonal carrying the negative exit rate.
std::vector<std::vector<double>> build_generator(const CtmcParams& params);

/// Expected time for the chain to fall from state n to the absorbing state 0.
/// Solves the first-step linear system T_0 = 0,
///   T_k = 1/r_k + P(k->k-1) T_{k-1} + P(k->k+1) T_{k+1}
/// exactly by backward elimination over the level differences.
double mean_time_to_failure(const CtmcParams& params);

/// Probability of hitting state 0 before state n, starting from k, with the
/// gambler's-ruin boundaries Q_0 = 1, Q_n = 0. Valid for 0 <= k <= n.
double absorption_path_probability(const CtmcParams& params, int k);

/// All of Q_0..Q_n in one solve.
std::vector<double> absorption_path_probabilities(const CtmcParams& params);

/// The printed closed form Q* = sum_{k=0}^{n-1} gamma^k / C(n-1, k).
double qstar_closed_form(int n, double gamma);

struct LifetimeDecomposition {
  double expected_states = 0.0;     // n_e = 1 / Q*
  double expected_state_time = 0.0; // t_e, derived so that n_e * t_e = T_s
  double total_lifetime_s = 0.0;    // T_s, the exact mean time to failure
};

/// Reports T_s = n_e * t_e with n_e from the closed form and t_e derived from
/// the exact solver; the exact solve is authoritative for the total.
LifetimeDecomposition lifetime_decomposition(const CtmcParams& params);

struct MonteCarloEstimate {
  double mean_s = 0.0;
  double ci_half_width_s = 0.0;  // 95% confidence half-width
  int trials = 0;
};

/// Simulates the jump chain from state n to absorption. Sojourn times are
/// aggregated per state as gamma variates (a sum of iid exponentials), which
/// keeps the per-trial time distribution exact while avoiding one exponential
/// draw per jump.
MonteCarloEstimate monte_carlo_lifetime(const CtmcParams& params, int trials,
                                        RngStream& stream);

struct ReliabilityConstraints {
  int max_replicas = 0;            // eta_max
  double max_repair_time_s = 0.0;  // tau_max
  double max_bandwidth_Bps = 0.0;  // phi_max, bytes per second
  std::uint64_t replica_bytes = 0; // B
};

struct RepairBandwidth {
  double bytes_per_s = 0.0;  // phi
  bool bandwidth_ok = false;
  bool replica_count_ok = false;
  bool repair_time_ok = false;

  bool all_ok() const { return bandwidth_ok && replica_count_ok && repair_time_ok; }
};

/// Average repair bandwidth phi = eta * B / (1/lambda + 1/mu): bytes
/// re-created per replica lifecycle over the mean cycle time. Also checks
/// eta <= eta_max and mean repair time 1/mu <= tau_max. With mu = 0 the cycle
/// never completes: phi = 0 and the repair-time check fails for finite
/// tau_max.
RepairBandwidth repair_bandwidth(int replica_count,
                                 const ReliabilityConstraints& constraints,
                                 const CtmcParams& params);

}  // namespace vodsim
