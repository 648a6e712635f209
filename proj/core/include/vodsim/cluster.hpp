#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace vodsim {

struct ReplicationPlan;  // defined in replication.hpp

/// Catalog entry. Ids are 1-based popularity ranks: id 1 is the most popular
/// movie, higher ids are less popular.
struct Movie {
  int id = 0;
  std::uint64_t size_bytes = 0;
  double duration_s = 0.0;
  double popularity = 0.0;    // q_m, normalized over the catalog
  double arrival_rate = 0.0;  // requests per second
  int channels = 1;           // minimum channels for transmission
  int num_blocks = 1;
};

struct ChurnProfile {
  double mean_up_s = 0.0;
  double mean_dn_s = 0.0;
};

struct Availability {
  double up = 0.0;
  double down = 0.0;
};

/// Long-run fraction of time a peer with this churn profile is online,
/// up = mean_up / (mean_up + mean_dn). Throws std::invalid_argument when both
/// means are zero.
Availability availability(const ChurnProfile& churn);

enum class PeerRole { Serving, NonServing };

struct Peer {
  int id = 0;
  PeerRole role = PeerRole::NonServing;
  std::uint64_t storage_bytes = 0;
  int uplink_channels = 0;
  ChurnProfile churn;
  bool online = true;
  std::set<int> stored;  // movie ids; at most one replica of a movie per peer
  std::uint64_t used_bytes = 0;
  int active_streams = 0;

  std::uint64_t free_bytes() const { return storage_bytes - used_bytes; }
  int free_uplink() const { return uplink_channels - active_streams; }
  bool holds(int movie_id) const { return stored.count(movie_id) > 0; }
};

/// Adds a replica, enforcing the capacity and no-duplicate invariants.
/// Returns false (and leaves the peer unchanged) if either would break.
bool add_replica(Peer& peer, const Movie& movie);
void drop_replica(Peer& peer, const Movie& movie);

struct RegistryEntry {
  int peer_id = 0;
  std::uint64_t storage_bytes = 0;
  int uplink_channels = 0;
  ChurnProfile churn;
};

struct ProxyServer {
  int bandwidth_channels = 0;
  std::uint64_t buffer_bytes = 0;
  // Cached movie id -> request counter. Counters back the LFU bookkeeping and
  // are reported in metrics; eviction itself is decided on popularity.
  std::map<int, std::uint64_t> cached;
  std::uint64_t cached_bytes = 0;
  std::vector<RegistryEntry> registry;

  bool has_cached(int movie_id) const { return cached.count(movie_id) > 0; }
};

struct Cluster {
  ProxyServer proxy;
  std::vector<Peer> peers;    // peer id == index
  std::vector<Movie> catalog; // movie id m lives at index m - 1

  const Movie& movie(int id) const { return catalog.at(static_cast<std::size_t>(id - 1)); }
  int serving_count() const;
};

struct ReplicationValidity {
  bool storage_ok = false;
  bool channels_ok = false;
  bool valid() const { return storage_ok && channels_ok; }
};

/// Checks a plan against the aggregate serving-peer storage
/// (sum S_m * R_m <= sum B_g) and the cluster channel requirement
/// (sum beta_g >= sum C_m). The verdict carries which constraint failed.
ReplicationValidity valid_replication(const ReplicationPlan& plan,
                                      const Cluster& cluster);

enum class LfuResult { Stored, Rejected, RejectedTooLarge };

struct LfuOutcome {
  LfuResult result = LfuResult::Rejected;
  std::vector<int> evicted;  // movie ids removed to make room

  bool stored() const { return result == LfuResult::Stored; }
};

/// Popularity-based LFU placement into the proxy buffer. If space is short,
/// the least popular cached movies are evicted, but only while their
/// popularity is below the incoming movie's; otherwise the request is
/// rejected and the store left unchanged. Equal popularity evicts the higher
/// movie id first.
LfuOutcome lfu_place(ProxyServer& proxy, const Movie& movie,
                     const std::vector<Movie>& catalog);

/// Same policy applied to a peer's local store.
LfuOutcome lfu_place(Peer& peer, const Movie& movie,
                     const std::vector<Movie>& catalog);

/// Marks the peer as serving and records its resource snapshot in the proxy
/// registry. Idempotent; throws std::invalid_argument for an unknown id.
void register_serving_peer(Cluster& cluster, int peer_id);

}  // namespace vodsim
