#include "vodsim/selection.hpp"

namespace vodsim {

std::optional<int> least_load_first(std::span<const ResourceSnapshot> candidates) {
  std::optional<int> best;
  int best_free = 0;
  for (const ResourceSnapshot& c : candidates) {
    if (!c.online || c.free_uplink_channels < 1) continue;
    if (!best || c.free_uplink_channels > best_free ||
        (c.free_uplink_channels == best_free && c.peer_id < *best)) {
      best = c.peer_id;
      best_free = c.free_uplink_channels;
    }
  }
  return best;
}

std::optional<int> select_failover_source(std::span<const ResourceSnapshot> candidates,
                                          int failed_peer_id) {
  std::vector<ResourceSnapshot> filtered;
  filtered.reserve(candidates.size());
  for (const ResourceSnapshot& c : candidates) {
    if (c.peer_id != failed_peer_id) filtered.push_back(c);
  }
  return least_load_first(filtered);
}

std::vector<ResourceSnapshot> snapshot_holders(const Cluster& cluster,
                                               const std::set<int>& holder_ids) {
  std::vector<ResourceSnapshot> snaps;
  snaps.reserve(holder_ids.size());
  for (int id : holder_ids) {
    const Peer& p = cluster.peers.at(static_cast<std::size_t>(id));
    snaps.push_back({p.id, p.free_uplink(), p.online});
  }
  return snaps;
}

}  // namespace vodsim
