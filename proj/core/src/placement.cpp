#include "vodsim/placement.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace vodsim {

double movie_weight(double rate, double popularity, int replica_count,
                    double scale) {
  if (replica_count == 0) {
    throw std::invalid_argument("movie_weight: replica_count must be >= 1");
  }
  return rate * scale * popularity / static_cast<double>(replica_count);
}

namespace {

// Local mutable view of the serving peers while a placement is computed.
struct Slot {
  int peer_id = 0;
  bool online = false;
  std::uint64_t free_bytes = 0;
  std::uint64_t load_bytes = 0;  // bytes stored, the SLF load metric
  int movie_count = 0;
  std::set<int> holds;
};

std::vector<Slot> make_slots(const std::vector<Peer>& peers) {
  std::vector<Slot> slots;
  for (const Peer& p : peers) {
    if (p.role != PeerRole::Serving) continue;
    Slot s;
    s.peer_id = p.id;
    s.online = p.online;
    s.free_bytes = p.free_bytes();
    s.load_bytes = p.used_bytes;
    s.movie_count = static_cast<int>(p.stored.size());
    s.holds = p.stored;
    slots.push_back(std::move(s));
  }
  return slots;
}

bool eligible(const Slot& s, const Movie& movie, int max_movies) {
  return s.online && s.free_bytes >= movie.size_bytes &&
         s.movie_count < max_movies && s.holds.count(movie.id) == 0;
}

void place_on(Slot& s, const Movie& movie) {
  s.free_bytes -= movie.size_bytes;
  s.load_bytes += movie.size_bytes;
  ++s.movie_count;
  s.holds.insert(movie.id);
}

// Movie ids expanded to one entry per replica, highest weight first, ties by
// movie id ascending. Weight lookups fall back to 0 for unlisted movies.
std::vector<int> replicas_by_weight(const ReplicationPlan& plan,
                                    const std::vector<MovieWeight>& weights) {
  std::map<int, double> weight_of;
  for (const MovieWeight& w : weights) weight_of[w.movie_id] = w.weight;
  std::vector<int> movie_order;
  for (const auto& [id, count] : plan.counts) {
    if (count > 0) movie_order.push_back(id);
  }
  std::stable_sort(movie_order.begin(), movie_order.end(), [&](int a, int b) {
    const double wa = weight_of.count(a) ? weight_of[a] : 0.0;
    const double wb = weight_of.count(b) ? weight_of[b] : 0.0;
    if (wa != wb) return wa > wb;
    return a < b;
  });
  std::vector<int> replicas;
  for (int id : movie_order) {
    for (int i = 0; i < plan.count(id); ++i) replicas.push_back(id);
  }
  return replicas;
}

}  // namespace

PlacementAssignment smallest_load_first(const ReplicationPlan& plan,
                                        const std::vector<MovieWeight>& weights,
                                        const std::vector<Peer>& peers,
                                        const std::vector<Movie>& catalog,
                                        const PlacementConfig& config) {
  PlacementAssignment out;
  std::vector<Slot> slots = make_slots(peers);
  std::deque<int> remaining;
  for (int id : replicas_by_weight(plan, weights)) remaining.push_back(id);

  int round = 0;
  while (!remaining.empty()) {
    // Peers generally able to take something this round, least loaded first.
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const Slot& s = slots[i];
      if (s.online && s.movie_count < config.max_movies_per_peer && s.free_bytes > 0) {
        candidates.push_back(i);
      }
    }
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      if (slots[a].load_bytes != slots[b].load_bytes) {
        return slots[a].load_bytes < slots[b].load_bytes;
      }
      return slots[a].peer_id < slots[b].peer_id;
    });

    const std::size_t width = config.round_width > 0
        ? static_cast<std::size_t>(config.round_width)
        : candidates.size();
    const std::size_t quota = std::min({width, candidates.size(), remaining.size()});
    if (quota == 0) break;
    candidates.resize(std::min(candidates.size(), width));

    std::set<std::size_t> used;
    std::deque<int> retry;
    bool progress = false;
    for (std::size_t taken = 0; taken < quota && !remaining.empty(); ++taken) {
      const int movie_id = remaining.front();
      remaining.pop_front();
      const Movie& movie = catalog.at(static_cast<std::size_t>(movie_id - 1));

      // Least-loaded unused candidate eligible for this movie.
      std::size_t best = slots.size();
      for (std::size_t idx : candidates) {
        if (used.count(idx)) continue;
        if (!eligible(slots[idx], movie, config.max_movies_per_peer)) continue;
        if (best == slots.size() ||
            slots[idx].load_bytes < slots[best].load_bytes ||
            (slots[idx].load_bytes == slots[best].load_bytes &&
             slots[idx].peer_id < slots[best].peer_id)) {
          best = idx;
        }
      }
      if (best == slots.size()) {
        retry.push_back(movie_id);
        continue;
      }
      place_on(slots[best], movie);
      used.insert(best);
      out.pairs.push_back({movie_id, slots[best].peer_id});
      out.log.push_back({round, movie_id, slots[best].peer_id});
      progress = true;
    }
    for (auto it = retry.rbegin(); it != retry.rend(); ++it) remaining.push_front(*it);
    if (!progress) break;
    ++round;
  }
  for (int id : remaining) ++out.leftover[id];
  return out;
}

PlacementAssignment random_placement(const ReplicationPlan& plan,
                                     const std::vector<Peer>& peers,
                                     const std::vector<Movie>& catalog,
                                     const PlacementConfig& config,
                                     RngStream& stream) {
  PlacementAssignment out;
  std::vector<Slot> slots = make_slots(peers);
  for (const auto& [movie_id, count] : plan.counts) {
    const Movie& movie = catalog.at(static_cast<std::size_t>(movie_id - 1));
    for (int r = 0; r < count; ++r) {
      std::vector<std::size_t> pool;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (eligible(slots[i], movie, config.max_movies_per_peer)) pool.push_back(i);
      }
      if (pool.empty()) {
        ++out.leftover[movie_id];
        continue;
      }
      const std::size_t pick = pool[stream.uniform_below(pool.size())];
      place_on(slots[pick], movie);
      out.pairs.push_back({movie_id, slots[pick].peer_id});
      out.log.push_back({0, movie_id, slots[pick].peer_id});
    }
  }
  return out;
}

PlacementAssignment round_robin_placement(const ReplicationPlan& plan,
                                          const std::vector<MovieWeight>& weights,
                                          const std::vector<Peer>& peers,
                                          const std::vector<Movie>& catalog,
                                          const PlacementConfig& config) {
  PlacementAssignment out;
  std::vector<Slot> slots = make_slots(peers);
  std::sort(slots.begin(), slots.end(),
            [](const Slot& a, const Slot& b) { return a.peer_id < b.peer_id; });

  std::size_t cursor = 0;
  for (int movie_id : replicas_by_weight(plan, weights)) {
    const Movie& movie = catalog.at(static_cast<std::size_t>(movie_id - 1));
    bool placed = false;
    for (std::size_t tried = 0; tried < slots.size(); ++tried) {
      Slot& s = slots[(cursor + tried) % slots.size()];
      if (!eligible(s, movie, config.max_movies_per_peer)) continue;
      place_on(s, movie);
      out.pairs.push_back({movie_id, s.peer_id});
      out.log.push_back({0, movie_id, s.peer_id});
      cursor = (cursor + tried + 1) % slots.size();
      placed = true;
      break;
    }
    if (!placed) ++out.leftover[movie_id];
  }
  return out;
}

std::optional<PlacementPolicy> placement_from_name(std::string_view name) {
  if (name == "slf") return PlacementPolicy::SmallestLoadFirst;
  if (name == "random") return PlacementPolicy::Random;
  if (name == "round_robin") return PlacementPolicy::RoundRobin;
  return std::nullopt;
}

const std::vector<std::string>& placement_names() {
  static const std::vector<std::string> names = {"slf", "random", "round_robin"};
  return names;
}

std::string to_string(PlacementPolicy p) {
  switch (p) {
    case PlacementPolicy::SmallestLoadFirst: return "slf";
    case PlacementPolicy::Random: return "random";
    case PlacementPolicy::RoundRobin: return "round_robin";
  }
  return "?";
}

void apply_assignment(Cluster& cluster, const PlacementAssignment& assignment) {
  for (const PlacementPair& pair : assignment.pairs) {
    Peer& peer = cluster.peers.at(static_cast<std::size_t>(pair.peer_id));
    add_replica(peer, cluster.movie(pair.movie_id));
  }
}

}  // namespace vodsim
