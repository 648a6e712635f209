#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vodsim/cluster.hpp"

namespace vodsim {

/// What the proxy registry reports about one serving peer at query time.
struct ResourceSnapshot {
  int peer_id = 0;
  int free_uplink_channels = 0;
  bool online = false;
};

/// Least Load First selection: returns the online candidate with the most
/// free uplink channels (at least one), lowest id on ties. An empty result is
/// the proxy-fallback signal.
std::optional<int> least_load_first(std::span<const ResourceSnapshot> candidates);

/// Re-selection after a source failure. Never returns the failed peer.
std::optional<int> select_failover_source(std::span<const ResourceSnapshot> candidates,
                                          int failed_peer_id);

/// Snapshots for the peers currently holding a movie.
std::vector<ResourceSnapshot> snapshot_holders(const Cluster& cluster,
                                               const std::set<int>& holder_ids);

}  // namespace vodsim
