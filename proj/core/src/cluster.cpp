#include "vodsim/cluster.hpp"

#include <algorithm>
#include <stdexcept>

#include "vodsim/replication.hpp"

namespace vodsim {

Availability availability(const ChurnProfile& churn) {
  if (churn.mean_up_s < 0.0 || churn.mean_dn_s < 0.0) {
    throw std::invalid_argument("availability: churn means must be >= 0");
  }
  const double total = churn.mean_up_s + churn.mean_dn_s;
  if (total <= 0.0) {
    throw std::invalid_argument("availability: degenerate churn profile (both means zero)");
  }
  return {churn.mean_up_s / total, churn.mean_dn_s / total};
}

bool add_replica(Peer& peer, const Movie& movie) {
  if (peer.holds(movie.id)) return false;
  if (movie.size_bytes > peer.free_bytes()) return false;
  peer.stored.insert(movie.id);
  peer.used_bytes += movie.size_bytes;
  return true;
}

void drop_replica(Peer& peer, const Movie& movie) {
  if (peer.stored.erase(movie.id) > 0) {
    peer.used_bytes -= movie.size_bytes;
  }
}

int Cluster::serving_count() const {
  int n = 0;
  for (const Peer& p : peers) {
    if (p.role == PeerRole::Serving) ++n;
  }
  return n;
}

ReplicationValidity valid_replication(const ReplicationPlan& plan,
                                      const Cluster& cluster) {
  std::uint64_t plan_bytes = 0;
  for (const auto& [movie_id, count] : plan.counts) {
    plan_bytes += cluster.movie(movie_id).size_bytes * static_cast<std::uint64_t>(count);
  }
  std::uint64_t storage = 0;
  long long channels = 0;
  for (const Peer& p : cluster.peers) {
    if (p.role == PeerRole::Serving) {
      storage += p.storage_bytes;
      channels += p.uplink_channels;
    }
  }
  long long required = 0;
  for (const Movie& m : cluster.catalog) required += m.channels;

  ReplicationValidity verdict;
  verdict.storage_ok = plan_bytes <= storage;
  verdict.channels_ok = channels >= required;
  return verdict;
}

namespace {

// Shared LFU eviction planning over (movie id, popularity, size) items.
// Returns the eviction list, or nullopt-equivalent via `ok = false` when the
// incoming movie cannot be placed. The store is only mutated by the callers.
struct EvictionPlan {
  bool ok = false;
  std::vector<int> evicted;
};

EvictionPlan plan_lfu_eviction(std::uint64_t capacity, std::uint64_t used,
                               const std::vector<int>& stored_ids,
                               const Movie& incoming,
                               const std::vector<Movie>& catalog) {
  EvictionPlan plan;
  if (incoming.size_bytes > capacity) return plan;  // too large outright
  if (capacity - used >= incoming.size_bytes) {
    plan.ok = true;
    return plan;
  }
  // Least popular first; equal popularity evicts the higher id first.
  std::vector<int> order = stored_ids;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Movie& ma = catalog.at(static_cast<std::size_t>(a - 1));
    const Movie& mb = catalog.at(static_cast<std::size_t>(b - 1));
    if (ma.popularity != mb.popularity) return ma.popularity < mb.popularity;
    return a > b;
  });
  std::uint64_t freed = 0;
  for (int id : order) {
    const Movie& victim = catalog.at(static_cast<std::size_t>(id - 1));
    if (victim.popularity >= incoming.popularity) break;
    plan.evicted.push_back(id);
    freed += victim.size_bytes;
    if (capacity - used + freed >= incoming.size_bytes) {
      plan.ok = true;
      return plan;
    }
  }
  plan.evicted.clear();
  return plan;
}

}  // namespace

LfuOutcome lfu_place(ProxyServer& proxy, const Movie& movie,
                     const std::vector<Movie>& catalog) {
  LfuOutcome outcome;
  if (proxy.has_cached(movie.id)) {
    throw std::invalid_argument("lfu_place: movie already cached");
  }
  if (movie.size_bytes > proxy.buffer_bytes) {
    outcome.result = LfuResult::RejectedTooLarge;
    return outcome;
  }
  std::vector<int> ids;
  ids.reserve(proxy.cached.size());
  for (const auto& [id, counter] : proxy.cached) ids.push_back(id);

  EvictionPlan plan = plan_lfu_eviction(proxy.buffer_bytes, proxy.cached_bytes,
                                        ids, movie, catalog);
  if (!plan.ok) {
    outcome.result = LfuResult::Rejected;
    return outcome;
  }
  for (int id : plan.evicted) {
    proxy.cached_bytes -= catalog.at(static_cast<std::size_t>(id - 1)).size_bytes;
    proxy.cached.erase(id);
  }
  proxy.cached.emplace(movie.id, 0);
  proxy.cached_bytes += movie.size_bytes;
  outcome.result = LfuResult::Stored;
  outcome.evicted = std::move(plan.evicted);
  return outcome;
}

LfuOutcome lfu_place(Peer& peer, const Movie& movie,
                     const std::vector<Movie>& catalog) {
  LfuOutcome outcome;
  if (peer.holds(movie.id)) {
    throw std::invalid_argument("lfu_place: movie already stored");
  }
  if (movie.size_bytes > peer.storage_bytes) {
    outcome.result = LfuResult::RejectedTooLarge;
    return outcome;
  }
  std::vector<int> ids(peer.stored.begin(), peer.stored.end());
  EvictionPlan plan = plan_lfu_eviction(peer.storage_bytes, peer.used_bytes,
                                        ids, movie, catalog);
  if (!plan.ok) {
    outcome.result = LfuResult::Rejected;
    return outcome;
  }
  for (int id : plan.evicted) {
    drop_replica(peer, catalog.at(static_cast<std::size_t>(id - 1)));
  }
  add_replica(peer, movie);
  outcome.result = LfuResult::Stored;
  outcome.evicted = std::move(plan.evicted);
  return outcome;
}

void register_serving_peer(Cluster& cluster, int peer_id) {
  if (peer_id < 0 || peer_id >= static_cast<int>(cluster.peers.size())) {
    throw std::invalid_argument("register_serving_peer: unknown peer id");
  }
  Peer& peer = cluster.peers[static_cast<std::size_t>(peer_id)];
  peer.role = PeerRole::Serving;
  for (RegistryEntry& e : cluster.proxy.registry) {
    if (e.peer_id == peer_id) {
      e = {peer_id, peer.storage_bytes, peer.uplink_channels, peer.churn};
      return;
    }
  }
  cluster.proxy.registry.push_back(
      {peer_id, peer.storage_bytes, peer.uplink_channels, peer.churn});
}

}  // namespace vodsim
