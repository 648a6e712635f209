#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "vodsim/cluster.hpp"
#include "vodsim/metrics.hpp"
#include "vodsim/placement.hpp"
#include "vodsim/replication.hpp"
#include "vodsim/rng.hpp"

namespace vodsim {

struct SimConfig {
  int peers = 150;
  double serving_fraction = 0.4;
  int movies = 20;
  double zipf_skew = 0.271;
  double arrival_per_hour = 300.0;
  double movie_duration_s = 7200.0;
  std::uint64_t movie_size_bytes = 1'000'000'000ULL;
  int movie_blocks = 100;
  int movie_channels = 1;
  double mean_up_s = 3600.0;
  double mean_dn_s = 32400.0;
  int max_movies_per_peer = 10;
  int uplink_ratio = 2;       // serving uplink = ratio * nonserving uplink
  int nonserving_uplink = 1;
  std::string strategy = "proposed";
  std::string placement = "slf";
  double batch_interval_s = 600.0;
  double repair_gamma = 1.0;  // mu = gamma * (1 / mean_up_s)
  double handoff_fraction = 0.1;  // share of blocks the proxy serves first
  double chaining_latency_s = 0.0;
  double weight_scale = 1.0;
  int placement_round_width = 0;  // 0: one round spans all eligible peers
  int proxy_channels = 120;
  std::uint64_t proxy_buffer_bytes = 5'000'000'000ULL;
  double sim_duration_s = 7200.0;
  std::uint64_t seed = 1;

  double aggregate_rate() const { return arrival_per_hour / 3600.0; }
  int serving_peer_count() const;
  double replica_fail_rate() const { return mean_up_s > 0.0 ? 1.0 / mean_up_s : 0.0; }
  double replica_repair_rate() const { return repair_gamma * replica_fail_rate(); }
};

/// Throws std::invalid_argument naming the offending key.
void validate(const SimConfig& config);

enum class EventKind {
  RequestArrival,
  SessionEnd,
  SessionHandoff,
  PeerDown,
  PeerUp,
  RepairComplete,
  ReplicationBatch,
};

struct Event {
  double time_s = 0.0;
  std::uint64_t seq = 0;  // tie-break, makes the order total
  EventKind kind = EventKind::RequestArrival;
  int movie_id = -1;
  int peer_id = -1;
  int session_id = -1;
  int generation = 0;  // matches Session::end_generation for SessionEnd
};

enum class SessionStatus { Active, Completed, Failed };
enum class StreamSource { Proxy, MainServer, ServingPeer };

struct Session {
  int id = 0;
  int movie_id = 0;
  int requester = 0;
  StreamSource source = StreamSource::Proxy;
  int source_peer = -1;  // valid when source == ServingPeer
  double start_s = 0.0;
  double end_s = 0.0;
  double position_s = 0.0;
  SessionStatus status = SessionStatus::Active;
  int failover_count = 0;
  bool ever_peer_sourced = false;
  int end_generation = 0;
  double proxy_phase_start = 0.0;
  bool transient_buffer = false;  // uncached movie held in the proxy buffer
};

/// Deterministic event loop tying workload, replication, placement, selection,
/// churn and repair together. A (config, seed) pair fully determines the run.
class Simulator {
 public:
  using Observer = std::function<void(const Simulator&)>;

  explicit Simulator(const SimConfig& config);

  /// Processes events up to sim_duration_s and returns the collected metrics.
  /// The observer, when set, runs after every processed event; tests use it
  /// to assert state invariants at event boundaries.
  MetricsReport run(const Observer& observer = {});

  const SimConfig& config() const { return config_; }
  const Cluster& cluster() const { return cluster_; }
  const std::vector<Session>& sessions() const { return sessions_; }
  double clock() const { return clock_; }
  int proxy_busy() const { return proxy_busy_; }
  const std::set<int>& holders(int movie_id) const;
  std::uint64_t admitted() const { return admitted_; }
  std::uint64_t rejected() const { return rejected_; }
  std::uint64_t successes() const { return successes_; }
  std::uint64_t failures() const { return failures_; }

 private:
  struct Lineage {
    bool active = false;
    double start_s = 0.0;
    int max_n = 0;
  };

  void initialize();
  void dispatch(const Event& event);
  void on_request_arrival(const Event& event);
  void on_session_end(const Event& event);
  void on_session_handoff(const Event& event);
  void on_peer_down(const Event& event);
  void on_peer_up(const Event& event);
  void on_repair_complete(const Event& event);
  void on_replication_batch();
  void failover(Session& session, int failed_peer);

  void schedule(double time_s, EventKind kind, int movie_id = -1, int peer_id = -1,
                int session_id = -1, int generation = 0);
  void schedule_next_arrival();
  int pick_movie();
  int pick_requester();
  double handoff_delay(const Movie& movie) const;

  void start_proxy_phase(Session& session);
  void close_proxy_phase(Session& session);
  void attach_to_peer(Session& session, int peer_id);
  void detach_from_peer(Session& session);

  void lose_replica(int movie_id, int peer_id);
  void gain_replica(int movie_id, int peer_id);

  void add_interval(std::vector<double>& bins, double t0, double t1, double weight);
  void touch_buffer();
  std::uint64_t buffer_level() const;

  MetricsReport finalize();

  SimConfig config_;
  Strategy strategy_ = Strategy::Proposed;
  PlacementPolicy placement_ = PlacementPolicy::SmallestLoadFirst;

  Cluster cluster_;
  std::vector<int> nonserving_ids_;
  std::vector<std::set<int>> holders_;      // per movie index
  std::vector<int> target_replicas_;        // repair ceiling per movie index
  std::vector<Lineage> lineage_;
  std::vector<double> cumulative_popularity_;

  RngStream arrival_rng_;
  RngStream requester_rng_;
  RngStream churn_rng_;
  RngStream repair_rng_;
  RngStream strategy_rng_;
  RngStream placement_rng_;

  struct EventAfter {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time_s != b.time_s) return a.time_s > b.time_s;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
  std::uint64_t next_seq_ = 0;
  double clock_ = 0.0;

  std::vector<Session> sessions_;
  std::vector<std::set<int>> sourced_by_;  // per peer: active sessions it feeds
  int proxy_busy_ = 0;

  std::vector<std::uint64_t> window_requests_;  // per movie, current window

  std::vector<double> bandwidth_busy_s_;  // per window: busy channel-seconds
  std::vector<double> buffer_byte_s_;     // per window: occupied byte-seconds
  std::uint64_t transient_bytes_ = 0;
  std::map<int, int> transient_refcount_;
  double buffer_last_t_ = 0.0;

  std::uint64_t admitted_ = 0;
  std::uint64_t rejected_ = 0;
  std::uint64_t successes_ = 0;
  std::uint64_t failures_ = 0;
  std::uint64_t failover_total_ = 0;
  std::uint64_t batch_copies_ = 0;
  std::uint64_t repair_copies_ = 0;

  std::map<int, LifetimeAccumulator> lifetime_by_n_;
  std::vector<LifetimeAccumulator> lifetime_per_movie_;
};

MetricsReport run_simulation(const SimConfig& config,
                             const Simulator::Observer& observer = {});

}  // namespace vodsim
