#pragma once

#include <map>
#include <vector>

#include "vodsim/cluster.hpp"
#include "vodsim/replication.hpp"
#include "vodsim/rng.hpp"

namespace vodsim {

struct MovieWeight {
  int movie_id = 0;
  double weight = 0.0;
};

/// W = rate * scale * popularity / replica_count. Only the weight ORDER is
/// consumed downstream, so any positive scale yields the same placements.
/// Throws std::invalid_argument when replica_count is 0.
double movie_weight(double rate, double popularity, int replica_count,
                    double scale = 1.0);

struct PlacementPair {
  int movie_id = 0;
  int peer_id = 0;
};

struct PlacementLogEntry {
  int round = 0;
  int movie_id = 0;
  int peer_id = 0;
};

/// Result of mapping a plan onto peers. Replicas that could not be placed
/// anywhere are reported in `leftover`, never silently dropped. The log
/// records the placement order so tests can replay it and check the
/// least-loaded property.
struct PlacementAssignment {
  std::vector<PlacementPair> pairs;
  std::map<int, int> leftover;  // movie id -> unplaced replica count
  std::vector<PlacementLogEntry> log;
};

struct PlacementConfig {
  int max_movies_per_peer = 10;
  // Replicas placed per round (Q). 0 selects the number of currently
  // eligible peers, so each round spreads over every available peer.
  int round_width = 0;
};

/// Smallest Load First: replicas sorted by weight non-ascending (ties by
/// movie id) are placed round by round; each round assigns up to Q replicas
/// onto the Q least-loaded eligible peers, one replica per peer per round.
/// Load is bytes currently stored. Eligibility per (movie, peer): online,
/// enough free bytes, under the movie cap, not already holding the movie.
PlacementAssignment smallest_load_first(const ReplicationPlan& plan,
                                        const std::vector<MovieWeight>& weights,
                                        const std::vector<Peer>& peers,
                                        const std::vector<Movie>& catalog,
                                        const PlacementConfig& config);

/// Uniform draw over the eligible peers for every replica.
PlacementAssignment random_placement(const ReplicationPlan& plan,
                                     const std::vector<Peer>& peers,
                                     const std::vector<Movie>& catalog,
                                     const PlacementConfig& config,
                                     RngStream& stream);

/// Cycles peers in id order, skipping ineligible ones; replicas are taken in
/// weight order.
PlacementAssignment round_robin_placement(const ReplicationPlan& plan,
                                          const std::vector<MovieWeight>& weights,
                                          const std::vector<Peer>& peers,
                                          const std::vector<Movie>& catalog,
                                          const PlacementConfig& config);

enum class PlacementPolicy { SmallestLoadFirst, Random, RoundRobin };

std::optional<PlacementPolicy> placement_from_name(std::string_view name);
const std::vector<std::string>& placement_names();
std::string to_string(PlacementPolicy p);

/// Applies the pairs to cluster peers (stored sets and used bytes).
void apply_assignment(Cluster& cluster, const PlacementAssignment& assignment);

}  // namespace vodsim
