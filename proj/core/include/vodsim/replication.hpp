#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vodsim/cluster.hpp"
#include "vodsim/rng.hpp"

namespace vodsim {

/// Per-movie replica counts produced by a strategy for one batch window.
struct ReplicationPlan {
  std::map<int, int> counts;  // movie id -> R_m

  int total() const;
  int count(int movie_id) const;
};

struct RequestBatchEntry {
  int movie_id = 0;
  double rate = 0.0;  // measured requests per second over the window
};

struct RequestBatch {
  std::vector<RequestBatchEntry> entries;  // one entry per requested movie
  double window_s = 0.0;
};

/// Number of serving peers able to take one replica of the movie right now:
/// online, with free storage at least the movie size.
int eligible_peer_count(const Cluster& cluster, const Movie& movie);

/// The proposed strategy. Per batched movie m, with the measured rate
/// normalized by the batch maximum (A_hat) and popularity q:
///   omega = (A_hat + q) / 2,  R_m = min(T_R, max(1, ceil(omega * T_R)))
/// where T_R counts the serving peers currently able to host the movie.
/// The result is shrunk from the least popular movies first until it passes
/// valid_replication's storage constraint.
ReplicationPlan proposed_replicas(const RequestBatch& batch, const Cluster& cluster);

/// Budget replicas spread uniformly at random over the batched movies.
ReplicationPlan random_replicas(const RequestBatch& batch, const Cluster& cluster,
                                int budget, RngStream& stream);

/// Budget replicas spread as evenly as possible, remainder to the most
/// popular movies (max count - min count <= 1 before capacity capping).
ReplicationPlan maxhit_replicas(const RequestBatch& batch, const Cluster& cluster,
                                int budget);

/// Budget replicas apportioned proportionally to popularity with
/// largest-remainder rounding, so counts decrease with rank.
ReplicationPlan minreq_replicas(const RequestBatch& batch, const Cluster& cluster,
                                int budget);

enum class Strategy { Proposed, Random, MinReq, MaxHit };

std::optional<Strategy> strategy_from_name(std::string_view name);
const std::vector<std::string>& strategy_names();
std::string to_string(Strategy s);

/// Runs the named strategy. Baselines receive the proposed plan's total as
/// their budget so comparisons isolate the distribution shape.
ReplicationPlan make_plan(Strategy strategy, const RequestBatch& batch,
                          const Cluster& cluster, RngStream& stream);

}  // namespace vodsim
