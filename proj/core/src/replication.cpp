#include "vodsim/replication.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vodsim {

int ReplicationPlan::total() const {
  int sum = 0;
  for (const auto& [id, count] : counts) sum += count;
  return sum;
}

int ReplicationPlan::count(int movie_id) const {
  auto it = counts.find(movie_id);
  return it == counts.end() ? 0 : it->second;
}

int eligible_peer_count(const Cluster& cluster, const Movie& movie) {
  int n = 0;
  for (const Peer& p : cluster.peers) {
    if (p.role == PeerRole::Serving && p.online &&
        p.free_bytes() >= movie.size_bytes) {
      ++n;
    }
  }
  return n;
}

namespace {

void require_budget(int budget) {
  if (budget < 0) throw std::invalid_argument("replication: budget must be >= 0");
}

// Batched movie ids sorted by popularity descending, id ascending on ties.
std::vector<int> by_popularity(const RequestBatch& batch, const Cluster& cluster) {
  std::vector<int> ids;
  ids.reserve(batch.entries.size());
  for (const RequestBatchEntry& e : batch.entries) ids.push_back(e.movie_id);
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    const double qa = cluster.movie(a).popularity;
    const double qb = cluster.movie(b).popularity;
    if (qa != qb) return qa > qb;
    return a < b;
  });
  return ids;
}

// Drops replicas from the least popular movies until the plan fits the
// aggregate serving-peer storage.
void shrink_to_storage(ReplicationPlan& plan, const Cluster& cluster) {
  std::uint64_t storage = 0;
  for (const Peer& p : cluster.peers) {
    if (p.role == PeerRole::Serving) storage += p.storage_bytes;
  }
  std::uint64_t plan_bytes = 0;
  for (const auto& [id, count] : plan.counts) {
    plan_bytes += cluster.movie(id).size_bytes * static_cast<std::uint64_t>(count);
  }
  if (plan_bytes <= storage) return;

  std::vector<int> ids;
  for (const auto& [id, count] : plan.counts) ids.push_back(id);
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    const double qa = cluster.movie(a).popularity;
    const double qb = cluster.movie(b).popularity;
    if (qa != qb) return qa < qb;  // least popular first
    return a > b;
  });
  while (plan_bytes > storage) {
    bool changed = false;
    for (int id : ids) {
      int& count = plan.counts[id];
      if (count > 0) {
        --count;
        plan_bytes -= cluster.movie(id).size_bytes;
        changed = true;
        if (plan_bytes <= storage) break;
      }
    }
    if (!changed) break;  // nothing left to drop
  }
}

}  // namespace

ReplicationPlan proposed_replicas(const RequestBatch& batch, const Cluster& cluster) {
  ReplicationPlan plan;
  if (batch.entries.empty()) return plan;

  double max_rate = 0.0;
  std::map<int, double> rate_of;
  for (const RequestBatchEntry& e : batch.entries) {
    rate_of[e.movie_id] = e.rate;
    max_rate = std::max(max_rate, e.rate);
  }

  for (int id : by_popularity(batch, cluster)) {
    const Movie& movie = cluster.movie(id);
    const int available = eligible_peer_count(cluster, movie);
    if (available == 0) {
      plan.counts[id] = 0;  // proxy-only serving for this movie
      continue;
    }
    const double normalized_rate = max_rate > 0.0 ? rate_of[id] / max_rate : 0.0;
    const double omega = (normalized_rate + movie.popularity) / 2.0;
    const int raw = static_cast<int>(std::ceil(omega * available));
    plan.counts[id] = std::min(available, std::max(1, raw));
  }
  shrink_to_storage(plan, cluster);
  return plan;
}

ReplicationPlan random_replicas(const RequestBatch& batch, const Cluster& cluster,
                                int budget, RngStream& stream) {
  require_budget(budget);
  ReplicationPlan plan;
  if (batch.entries.empty()) return plan;

  std::vector<int> ids;
  std::vector<int> cap;
  for (const RequestBatchEntry& e : batch.entries) {
    ids.push_back(e.movie_id);
    plan.counts[e.movie_id] = 0;
  }
  std::sort(ids.begin(), ids.end());
  cap.resize(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    cap[i] = eligible_peer_count(cluster, cluster.movie(ids[i]));
  }

  for (int spent = 0; spent < budget; ++spent) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (plan.counts[ids[i]] < cap[i]) open.push_back(i);
    }
    if (open.empty()) break;
    const std::size_t pick = open[stream.uniform_below(open.size())];
    ++plan.counts[ids[pick]];
  }
  shrink_to_storage(plan, cluster);
  return plan;
}

ReplicationPlan maxhit_replicas(const RequestBatch& batch, const Cluster& cluster,
                                int budget) {
  require_budget(budget);
  ReplicationPlan plan;
  if (batch.entries.empty()) return plan;

  const std::vector<int> order = by_popularity(batch, cluster);
  const int m = static_cast<int>(order.size());
  const int base = budget / m;
  int remainder = budget % m;
  for (int id : order) {
    int count = base + (remainder > 0 ? 1 : 0);
    if (remainder > 0) --remainder;
    count = std::min(count, eligible_peer_count(cluster, cluster.movie(id)));
    plan.counts[id] = count;
  }
  shrink_to_storage(plan, cluster);
  return plan;
}

ReplicationPlan minreq_replicas(const RequestBatch& batch, const Cluster& cluster,
                                int budget) {
  require_budget(budget);
  ReplicationPlan plan;
  if (batch.entries.empty()) return plan;

  const std::vector<int> order = by_popularity(batch, cluster);
  double q_sum = 0.0;
  for (int id : order) q_sum += cluster.movie(id).popularity;

  // Largest-remainder apportionment of the budget over batch popularity.
  std::vector<double> quota(order.size());
  std::vector<int> floor_count(order.size());
  int assigned = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double share = q_sum > 0.0 ? cluster.movie(order[i]).popularity / q_sum
                                     : 1.0 / static_cast<double>(order.size());
    quota[i] = share * budget;
    floor_count[i] = static_cast<int>(std::floor(quota[i]));
    assigned += floor_count[i];
  }
  std::vector<std::size_t> by_remainder(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) by_remainder[i] = i;
  std::sort(by_remainder.begin(), by_remainder.end(), [&](std::size_t a, std::size_t b) {
    const double ra = quota[a] - floor_count[a];
    const double rb = quota[b] - floor_count[b];
    if (ra != rb) return ra > rb;
    return a < b;  // ties to the more popular movie
  });
  for (std::size_t i = 0; i < by_remainder.size() && assigned < budget; ++i, ++assigned) {
    ++floor_count[by_remainder[i]];
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int cap = eligible_peer_count(cluster, cluster.movie(order[i]));
    plan.counts[order[i]] = std::min(floor_count[i], cap);
  }
  shrink_to_storage(plan, cluster);
  return plan;
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
  if (name == "proposed") return Strategy::Proposed;
  if (name == "random") return Strategy::Random;
  if (name == "minreq") return Strategy::MinReq;
  if (name == "maxhit") return Strategy::MaxHit;
  return std::nullopt;
}

const std::vector<std::string>& strategy_names() {
  static const std::vector<std::string> names = {"proposed", "random", "minreq", "maxhit"};
  return names;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Proposed: return "proposed";
    case Strategy::Random: return "random";
    case Strategy::MinReq: return "minreq";
    case Strategy::MaxHit: return "maxhit";
  }
  return "?";
}

ReplicationPlan make_plan(Strategy strategy, const RequestBatch& batch,
                          const Cluster& cluster, RngStream& stream) {
  if (strategy == Strategy::Proposed) return proposed_replicas(batch, cluster);
  const int budget = proposed_replicas(batch, cluster).total();
  switch (strategy) {
    case Strategy::Random: return random_replicas(batch, cluster, budget, stream);
    case Strategy::MinReq: return minreq_replicas(batch, cluster, budget);
    case Strategy::MaxHit: return maxhit_replicas(batch, cluster, budget);
    default: return proposed_replicas(batch, cluster);
  }
}

}  // namespace vodsim
