#include "vodsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vodsim/config.hpp"
#include "vodsim/selection.hpp"
#include "vodsim/workload.hpp"

namespace vodsim {

int SimConfig::serving_peer_count() const {
  const int g = static_cast<int>(std::lround(peers * serving_fraction));
  return std::clamp(g, 0, peers);
}

void validate(const SimConfig& c) {
  auto fail = [](const std::string& key, const std::string& what) {
    throw std::invalid_argument("config key '" + key + "': " + what);
  };
  if (c.peers < 1) fail("peers", "must be >= 1");
  if (c.serving_fraction < 0.0 || c.serving_fraction > 1.0) fail("serving_fraction", "must be in [0, 1]");
  if (c.movies < 1) fail("movies", "must be >= 1");
  if (c.zipf_skew < 0.0) fail("zipf_skew", "must be >= 0");
  if (c.arrival_per_hour < 0.0) fail("arrival_per_hour", "must be >= 0");
  if (!(c.movie_duration_s > 0.0)) fail("movie_duration_s", "must be > 0");
  if (c.movie_size_bytes == 0) fail("movie_size_bytes", "must be > 0");
  if (c.movie_blocks < 1) fail("movie_blocks", "must be >= 1");
  if (c.movie_channels < 1) fail("movie_channels", "must be >= 1");
  if (c.mean_up_s < 0.0) fail("mean_up_s", "must be >= 0");
  if (c.mean_dn_s < 0.0) fail("mean_dn_s", "must be >= 0");
  if (c.mean_up_s + c.mean_dn_s <= 0.0) fail("mean_up_s", "mean_up_s + mean_dn_s must be > 0");
  if (c.max_movies_per_peer < 1) fail("max_movies_per_peer", "must be >= 1");
  if (c.uplink_ratio < 1) fail("uplink_ratio", "must be >= 1");
  if (c.nonserving_uplink < 1) fail("nonserving_uplink", "must be >= 1");
  if (!strategy_from_name(c.strategy)) {
    std::string names;
    for (const std::string& s : strategy_names()) names += (names.empty() ? "" : " | ") + s;
    fail("strategy", "unknown strategy '" + c.strategy + "', valid: " + names);
  }
  if (!placement_from_name(c.placement)) {
    std::string names;
    for (const std::string& s : placement_names()) names += (names.empty() ? "" : " | ") + s;
    fail("placement", "unknown placement '" + c.placement + "', valid: " + names);
  }
  if (!(c.batch_interval_s > 0.0)) fail("batch_interval_s", "must be > 0");
  if (c.repair_gamma < 0.0) fail("repair_gamma", "must be >= 0");
  if (c.handoff_fraction < 0.0 || c.handoff_fraction > 1.0) fail("handoff_fraction", "must be in [0, 1]");
  if (c.chaining_latency_s < 0.0) fail("chaining_latency_s", "must be >= 0");
  if (!(c.weight_scale > 0.0)) fail("weight_scale", "must be > 0");
  if (c.placement_round_width < 0) fail("placement_round_width", "must be >= 0");
  if (c.proxy_channels < 0) fail("proxy_channels", "must be >= 0");
  if (!(c.sim_duration_s > 0.0)) fail("sim_duration_s", "must be > 0");
}

Simulator::Simulator(const SimConfig& config)
    : config_(config),
      arrival_rng_(config.seed, "arrivals"),
      requester_rng_(config.seed, "requesters"),
      churn_rng_(config.seed, "churn"),
      repair_rng_(config.seed, "repair"),
      strategy_rng_(config.seed, "strategy"),
      placement_rng_(config.seed, "placement") {
  validate(config_);
  strategy_ = *strategy_from_name(config_.strategy);
  placement_ = *placement_from_name(config_.placement);
}

const std::set<int>& Simulator::holders(int movie_id) const {
  return holders_.at(static_cast<std::size_t>(movie_id - 1));
}

void Simulator::initialize() {
  const int m = config_.movies;
  const std::vector<double> popularity = zipf_popularity(m, config_.zipf_skew);
  const std::vector<double> rates = per_movie_rates(popularity, config_.aggregate_rate());

  cluster_.catalog.resize(static_cast<std::size_t>(m));
  cumulative_popularity_.resize(static_cast<std::size_t>(m));
  double cumulative = 0.0;
  for (int i = 0; i < m; ++i) {
    Movie& movie = cluster_.catalog[static_cast<std::size_t>(i)];
    movie.id = i + 1;
    movie.size_bytes = config_.movie_size_bytes;
    movie.duration_s = config_.movie_duration_s;
    movie.popularity = popularity[static_cast<std::size_t>(i)];
    movie.arrival_rate = rates[static_cast<std::size_t>(i)];
    movie.channels = config_.movie_channels;
    movie.num_blocks = config_.movie_blocks;
    cumulative += movie.popularity;
    cumulative_popularity_[static_cast<std::size_t>(i)] = cumulative;
  }

  const int total_peers = config_.peers;
  const int serving = config_.serving_peer_count();
  cluster_.peers.resize(static_cast<std::size_t>(total_peers));
  for (int id = 0; id < total_peers; ++id) {
    Peer& p = cluster_.peers[static_cast<std::size_t>(id)];
    p.id = id;
    if (id < serving) {
      p.role = PeerRole::Serving;
      p.storage_bytes = static_cast<std::uint64_t>(config_.max_movies_per_peer) *
                        config_.movie_size_bytes;
      p.uplink_channels = config_.uplink_ratio * config_.nonserving_uplink;
      p.churn = {config_.mean_up_s, config_.mean_dn_s};
    } else {
      p.role = PeerRole::NonServing;
      p.storage_bytes = 0;
      p.uplink_channels = config_.nonserving_uplink;
      p.churn = {1.0, 0.0};  // always on
      nonserving_ids_.push_back(id);
    }
  }
  for (int id = 0; id < serving; ++id) register_serving_peer(cluster_, id);

  cluster_.proxy.bandwidth_channels = config_.proxy_channels;
  cluster_.proxy.buffer_bytes = config_.proxy_buffer_bytes;

  holders_.assign(static_cast<std::size_t>(m), {});
  target_replicas_.assign(static_cast<std::size_t>(m), 0);
  lineage_.assign(static_cast<std::size_t>(m), {});
  window_requests_.assign(static_cast<std::size_t>(m), 0);
  lifetime_per_movie_.assign(static_cast<std::size_t>(m), {});
  sourced_by_.assign(static_cast<std::size_t>(total_peers), {});

  const int windows = static_cast<int>(
      std::ceil(config_.sim_duration_s / config_.batch_interval_s));
  bandwidth_busy_s_.assign(static_cast<std::size_t>(windows), 0.0);
  buffer_byte_s_.assign(static_cast<std::size_t>(windows), 0.0);

  // Serving peers start in the stationary distribution of their churn.
  const double a_up = config_.mean_up_s / (config_.mean_up_s + config_.mean_dn_s);
  for (int id = 0; id < serving; ++id) {
    Peer& p = cluster_.peers[static_cast<std::size_t>(id)];
    if (config_.mean_up_s <= 0.0) {
      p.online = false;  // never comes up
      continue;
    }
    if (config_.mean_dn_s <= 0.0) {
      p.online = true;  // never goes down
      continue;
    }
    p.online = churn_rng_.uniform01() < a_up;
    if (p.online) {
      schedule(churn_rng_.exponential(config_.mean_up_s), EventKind::PeerDown, -1, id);
    } else {
      schedule(churn_rng_.exponential(config_.mean_dn_s), EventKind::PeerUp, -1, id);
    }
  }

  if (config_.aggregate_rate() > 0.0 && !nonserving_ids_.empty()) {
    schedule_next_arrival();
  }
  schedule(config_.batch_interval_s, EventKind::ReplicationBatch);
}

void Simulator::schedule(double time_s, EventKind kind, int movie_id, int peer_id,
                         int session_id, int generation) {
  if (time_s > config_.sim_duration_s) return;
  Event ev;
  ev.time_s = time_s;
  ev.seq = next_seq_++;
  ev.kind = kind;
  ev.movie_id = movie_id;
  ev.peer_id = peer_id;
  ev.session_id = session_id;
  ev.generation = generation;
  queue_.push(ev);
}

void Simulator::schedule_next_arrival() {
  const double mean_gap = 1.0 / config_.aggregate_rate();
  const double t = clock_ + arrival_rng_.exponential(mean_gap);
  schedule(t, EventKind::RequestArrival, pick_movie());
}

int Simulator::pick_movie() {
  const double u = arrival_rng_.uniform01();
  for (std::size_t i = 0; i < cumulative_popularity_.size(); ++i) {
    if (u < cumulative_popularity_[i]) return static_cast<int>(i) + 1;
  }
  return config_.movies;
}

int Simulator::pick_requester() {
  return nonserving_ids_[requester_rng_.uniform_below(nonserving_ids_.size())];
}

double Simulator::handoff_delay(const Movie& movie) const {
  // The handoff point is a block index: the proxy serves the first blocks
  // and the chained peer takes over from there.
  const double blocks = std::clamp(
      std::round(config_.handoff_fraction * movie.num_blocks), 0.0,
      static_cast<double>(movie.num_blocks));
  return movie.duration_s * blocks / movie.num_blocks;
}

MetricsReport Simulator::run(const Observer& observer) {
  initialize();
  while (!queue_.empty()) {
    const Event ev = queue_.top();
    if (ev.time_s > config_.sim_duration_s) break;
    queue_.pop();
    clock_ = ev.time_s;
    dispatch(ev);
    if (observer) observer(*this);
  }
  clock_ = config_.sim_duration_s;
  return finalize();
}

void Simulator::dispatch(const Event& ev) {
  switch (ev.kind) {
    case EventKind::RequestArrival: on_request_arrival(ev); break;
    case EventKind::SessionEnd: on_session_end(ev); break;
    case EventKind::SessionHandoff: on_session_handoff(ev); break;
    case EventKind::PeerDown: on_peer_down(ev); break;
    case EventKind::PeerUp: on_peer_up(ev); break;
    case EventKind::RepairComplete: on_repair_complete(ev); break;
    case EventKind::ReplicationBatch: on_replication_batch(); break;
  }
}

void Simulator::start_proxy_phase(Session& session) {
  const Movie& movie = cluster_.movie(session.movie_id);
  if (cluster_.proxy.has_cached(session.movie_id)) {
    session.source = StreamSource::Proxy;
  } else {
    // The main server feeds the proxy; the proxy tries to keep the copy.
    session.source = StreamSource::MainServer;
    lfu_place(cluster_.proxy, movie, cluster_.catalog);
  }
  ++proxy_busy_;
  session.proxy_phase_start = clock_;
  // Buffer occupancy counts the distinct movies the proxy is streaming.
  touch_buffer();
  session.transient_buffer = true;
  if (++transient_refcount_[session.movie_id] == 1) {
    transient_bytes_ += movie.size_bytes;
  }
}

void Simulator::close_proxy_phase(Session& session) {
  add_interval(bandwidth_busy_s_, session.proxy_phase_start, clock_, 1.0);
  --proxy_busy_;
  if (session.transient_buffer) {
    touch_buffer();
    auto it = transient_refcount_.find(session.movie_id);
    if (it != transient_refcount_.end() && --it->second == 0) {
      transient_bytes_ -= cluster_.movie(session.movie_id).size_bytes;
      transient_refcount_.erase(it);
    }
    session.transient_buffer = false;
  }
}

void Simulator::attach_to_peer(Session& session, int peer_id) {
  Peer& peer = cluster_.peers[static_cast<std::size_t>(peer_id)];
  session.source = StreamSource::ServingPeer;
  session.source_peer = peer_id;
  session.ever_peer_sourced = true;
  ++peer.active_streams;
  sourced_by_[static_cast<std::size_t>(peer_id)].insert(session.id);
}

void Simulator::detach_from_peer(Session& session) {
  Peer& peer = cluster_.peers[static_cast<std::size_t>(session.source_peer)];
  --peer.active_streams;
  sourced_by_[static_cast<std::size_t>(session.source_peer)].erase(session.id);
  session.source_peer = -1;
}

void Simulator::on_request_arrival(const Event& ev) {
  const int movie_id = ev.movie_id;
  ++window_requests_[static_cast<std::size_t>(movie_id - 1)];
  schedule_next_arrival();

  const int requester = pick_requester();
  const Movie& movie = cluster_.movie(movie_id);

  Session session;
  session.id = static_cast<int>(sessions_.size());
  session.movie_id = movie_id;
  session.requester = requester;
  session.start_s = clock_;
  session.end_s = clock_ + movie.duration_s;

  if (proxy_busy_ < config_.proxy_channels) {
    if (cluster_.proxy.has_cached(movie_id)) {
      ++cluster_.proxy.cached[movie_id];  // LFU request counter
    }
    start_proxy_phase(session);
    ++admitted_;
    sessions_.push_back(session);
    schedule(clock_ + handoff_delay(movie), EventKind::SessionHandoff, -1, -1, session.id);
    schedule(session.end_s, EventKind::SessionEnd, -1, -1, session.id, 0);
    return;
  }

  // Proxy saturated: go straight to a serving peer when one can stream.
  const auto snaps = snapshot_holders(cluster_, holders_[static_cast<std::size_t>(movie_id - 1)]);
  const std::optional<int> pick = least_load_first(snaps);
  if (pick) {
    sessions_.push_back(session);
    attach_to_peer(sessions_.back(), *pick);
    ++admitted_;
    schedule(session.end_s, EventKind::SessionEnd, -1, -1, session.id, 0);
    return;
  }
  ++rejected_;
}

void Simulator::on_session_handoff(const Event& ev) {
  Session& session = sessions_[static_cast<std::size_t>(ev.session_id)];
  if (session.status != SessionStatus::Active) return;
  if (session.source == StreamSource::ServingPeer) return;

  const auto snaps =
      snapshot_holders(cluster_, holders_[static_cast<std::size_t>(session.movie_id - 1)]);
  const std::optional<int> pick = least_load_first(snaps);
  if (!pick) return;  // proxy keeps the stream
  close_proxy_phase(session);
  attach_to_peer(session, *pick);
}

void Simulator::on_session_end(const Event& ev) {
  Session& session = sessions_[static_cast<std::size_t>(ev.session_id)];
  if (session.status != SessionStatus::Active) return;
  if (ev.generation != session.end_generation) return;  // rescheduled

  if (session.source == StreamSource::ServingPeer) {
    detach_from_peer(session);
  } else {
    close_proxy_phase(session);
  }
  session.position_s = cluster_.movie(session.movie_id).duration_s;
  session.status = SessionStatus::Completed;
  ++successes_;
}

void Simulator::lose_replica(int movie_id, int peer_id) {
  auto& set = holders_[static_cast<std::size_t>(movie_id - 1)];
  set.erase(peer_id);
  if (set.empty()) {
    Lineage& lin = lineage_[static_cast<std::size_t>(movie_id - 1)];
    if (lin.active) {
      const double lifetime = clock_ - lin.start_s;
      lifetime_by_n_[lin.max_n].total_s += lifetime;
      ++lifetime_by_n_[lin.max_n].samples;
      LifetimeAccumulator& per_movie = lifetime_per_movie_[static_cast<std::size_t>(movie_id - 1)];
      per_movie.total_s += lifetime;
      ++per_movie.samples;
      lin.active = false;
    }
  }
}

void Simulator::gain_replica(int movie_id, int peer_id) {
  auto& set = holders_[static_cast<std::size_t>(movie_id - 1)];
  Lineage& lin = lineage_[static_cast<std::size_t>(movie_id - 1)];
  if (set.empty() && !lin.active) {
    lin.active = true;
    lin.start_s = clock_;
    lin.max_n = 0;
  }
  set.insert(peer_id);
  lin.max_n = std::max(lin.max_n, static_cast<int>(set.size()));
}

void Simulator::on_peer_down(const Event& ev) {
  Peer& peer = cluster_.peers[static_cast<std::size_t>(ev.peer_id)];
  if (!peer.online) return;
  peer.online = false;

  // Replicas on the peer are lost; each loss gets a repair attempt after an
  // exponential repair time.
  const std::vector<int> lost(peer.stored.begin(), peer.stored.end());
  for (int movie_id : lost) {
    lose_replica(movie_id, peer.id);
    if (config_.replica_repair_rate() > 0.0) {
      const double repair_in = repair_rng_.exponential(1.0 / config_.replica_repair_rate());
      schedule(clock_ + repair_in, EventKind::RepairComplete, movie_id);
    }
  }
  peer.stored.clear();
  peer.used_bytes = 0;

  const std::vector<int> streams(sourced_by_[static_cast<std::size_t>(peer.id)].begin(),
                                 sourced_by_[static_cast<std::size_t>(peer.id)].end());
  sourced_by_[static_cast<std::size_t>(peer.id)].clear();
  peer.active_streams = 0;
  for (int session_id : streams) {
    Session& session = sessions_[static_cast<std::size_t>(session_id)];
    session.source_peer = -1;
    failover(session, peer.id);
  }

  if (config_.mean_dn_s > 0.0) {
    schedule(clock_ + churn_rng_.exponential(config_.mean_dn_s), EventKind::PeerUp, -1, peer.id);
  }
}

void Simulator::failover(Session& session, int failed_peer) {
  ++session.failover_count;
  ++failover_total_;

  const auto snaps =
      snapshot_holders(cluster_, holders_[static_cast<std::size_t>(session.movie_id - 1)]);
  const std::optional<int> pick = select_failover_source(snaps, failed_peer);
  if (pick) {
    attach_to_peer(session, *pick);
  } else if (proxy_busy_ < config_.proxy_channels) {
    start_proxy_phase(session);
  } else {
    fprintf(stderr, "FAIL t=%.0f movie=%d holders=%zu stock0=%d proxybusy=%d\n",
            clock_, session.movie_id, snaps.size(),
            (int)holders_[static_cast<std::size_t>(session.movie_id-1)].size(), proxy_busy_);
    session.status = SessionStatus::Failed;
    session.position_s = std::min(clock_ - session.start_s,
                                  cluster_.movie(session.movie_id).duration_s);
    ++failures_;
    return;
  }
  if (config_.chaining_latency_s > 0.0) {
    session.end_s += config_.chaining_latency_s;
    ++session.end_generation;
    schedule(session.end_s, EventKind::SessionEnd, -1, -1, session.id, session.end_generation);
  }
}

void Simulator::on_peer_up(const Event& ev) {
  Peer& peer = cluster_.peers[static_cast<std::size_t>(ev.peer_id)];
  if (peer.online) return;
  peer.online = true;
  if (config_.mean_up_s > 0.0) {
    schedule(clock_ + churn_rng_.exponential(config_.mean_up_s), EventKind::PeerDown, -1, peer.id);
  }
}

void Simulator::on_repair_complete(const Event& ev) {
  const int movie_id = ev.movie_id;
  const std::size_t idx = static_cast<std::size_t>(movie_id - 1);
  // State 0 is absorbing: once every replica is gone, nothing comes back
  // until the next replication batch re-seeds the movie.
  if (holders_[idx].empty()) return;
  if (static_cast<int>(holders_[idx].size()) >= target_replicas_[idx]) return;

  const Movie& movie = cluster_.movie(movie_id);
  int best = -1;
  std::uint64_t best_load = 0;
  for (const Peer& p : cluster_.peers) {
    if (p.role != PeerRole::Serving || !p.online) continue;
    if (p.holds(movie_id)) continue;
    if (p.free_bytes() < movie.size_bytes) continue;
    if (static_cast<int>(p.stored.size()) >= config_.max_movies_per_peer) continue;
    if (best < 0 || p.used_bytes < best_load) {
      best = p.id;
      best_load = p.used_bytes;
    }
  }
  if (best < 0) return;  // no eligible target right now
  add_replica(cluster_.peers[static_cast<std::size_t>(best)], movie);
  gain_replica(movie_id, best);
  ++repair_copies_;
}

void Simulator::on_replication_batch() {
  RequestBatch batch;
  batch.window_s = config_.batch_interval_s;
  for (std::size_t i = 0; i < window_requests_.size(); ++i) {
    if (window_requests_[i] > 0) {
      batch.entries.push_back({static_cast<int>(i) + 1,
                               static_cast<double>(window_requests_[i]) / batch.window_s});
    }
  }

  if (!batch.entries.empty()) {
    // The proposed plan is a set of per-movie target counts; the batch places
    // the missing copies. Baselines receive the same number of new copies to
    // spend, so the strategies differ only in how the copies are distributed.
    const ReplicationPlan proposed = proposed_replicas(batch, cluster_);
    int spend = 0;
    for (const auto& [movie_id, target] : proposed.counts) {
      const int have = static_cast<int>(holders_[static_cast<std::size_t>(movie_id - 1)].size());
      spend += std::max(0, target - have);
    }

    ReplicationPlan delta;
    if (strategy_ == Strategy::Proposed) {
      for (const auto& [movie_id, target] : proposed.counts) {
        const int have = static_cast<int>(holders_[static_cast<std::size_t>(movie_id - 1)].size());
        if (target > have) delta.counts[movie_id] = target - have;
      }
    } else {
      switch (strategy_) {
        case Strategy::Random:
          delta = random_replicas(batch, cluster_, spend, strategy_rng_);
          break;
        case Strategy::MinReq:
          delta = minreq_replicas(batch, cluster_, spend);
          break;
        case Strategy::MaxHit:
          delta = maxhit_replicas(batch, cluster_, spend);
          break;
        default:
          break;
      }
    }

    std::vector<MovieWeight> weights;
    std::map<int, double> rate_of;
    for (const RequestBatchEntry& e : batch.entries) rate_of[e.movie_id] = e.rate;
    for (const auto& [movie_id, need] : delta.counts) {
      if (need <= 0) continue;
      const int have = static_cast<int>(holders_[static_cast<std::size_t>(movie_id - 1)].size());
      weights.push_back({movie_id,
                         movie_weight(rate_of[movie_id],
                                      cluster_.movie(movie_id).popularity, have + need,
                                      config_.weight_scale)});
    }

    PlacementConfig pcfg;
    pcfg.max_movies_per_peer = config_.max_movies_per_peer;
    pcfg.round_width = config_.placement_round_width;
    PlacementAssignment assignment;
    switch (placement_) {
      case PlacementPolicy::SmallestLoadFirst:
        assignment = smallest_load_first(delta, weights, cluster_.peers, cluster_.catalog, pcfg);
        break;
      case PlacementPolicy::Random:
        assignment = random_placement(delta, cluster_.peers, cluster_.catalog, pcfg, placement_rng_);
        break;
      case PlacementPolicy::RoundRobin:
        assignment = round_robin_placement(delta, weights, cluster_.peers, cluster_.catalog, pcfg);
        break;
    }
    const double window_end =
        (std::floor(clock_ / config_.batch_interval_s) + 1.0) * config_.batch_interval_s;
    for (const PlacementPair& pair : assignment.pairs) {
      const Movie& movie = cluster_.movie(pair.movie_id);
      add_replica(cluster_.peers[static_cast<std::size_t>(pair.peer_id)], movie);
      gain_replica(pair.movie_id, pair.peer_id);
      ++batch_copies_;
      // The copy is fed by the proxy; it counts against this window's
      // bandwidth, at playback rate, up to the window boundary.
      add_interval(bandwidth_busy_s_, clock_,
                   std::min(clock_ + movie.duration_s, window_end), 1.0);
    }
    for (const auto& [movie_id, need] : delta.counts) {
      target_replicas_[static_cast<std::size_t>(movie_id - 1)] =
          static_cast<int>(holders_[static_cast<std::size_t>(movie_id - 1)].size());
    }
  }

  std::fill(window_requests_.begin(), window_requests_.end(), 0);
  schedule(clock_ + config_.batch_interval_s, EventKind::ReplicationBatch);
}

void Simulator::add_interval(std::vector<double>& bins, double t0, double t1, double weight) {
  t0 = std::max(0.0, t0);
  t1 = std::min(t1, config_.sim_duration_s);
  if (t1 <= t0 || bins.empty()) return;
  const double w = config_.batch_interval_s;
  std::size_t first = static_cast<std::size_t>(t0 / w);
  first = std::min(first, bins.size() - 1);
  for (std::size_t i = first; i < bins.size(); ++i) {
    const double bin_start = static_cast<double>(i) * w;
    if (bin_start >= t1) break;
    const double lo = std::max(t0, bin_start);
    const double hi = std::min(t1, bin_start + w);
    if (hi > lo) bins[i] += weight * (hi - lo);
  }
}

std::uint64_t Simulator::buffer_level() const {
  return transient_bytes_;
}

void Simulator::touch_buffer() {
  add_interval(buffer_byte_s_, buffer_last_t_, clock_, static_cast<double>(buffer_level()));
  buffer_last_t_ = clock_;
}

MetricsReport Simulator::finalize() {
  // Flush open proxy phases and the buffer level to the horizon.
  for (const Session& session : sessions_) {
    if (session.status == SessionStatus::Active &&
        session.source != StreamSource::ServingPeer) {
      add_interval(bandwidth_busy_s_, session.proxy_phase_start, clock_, 1.0);
    }
  }
  touch_buffer();

  MetricsReport report;
  report.runs = 1;
  report.replicas_per_movie.resize(holders_.size());
  for (std::size_t i = 0; i < holders_.size(); ++i) {
    report.replicas_per_movie[i] = static_cast<double>(holders_[i].size());
  }
  report.admitted = admitted_;
  report.rejected = rejected_;
  report.successes = successes_;
  report.failures = failures_;
  std::uint64_t chained = 0;
  std::uint64_t active = 0;
  for (const Session& session : sessions_) {
    if (session.ever_peer_sourced) ++chained;
    if (session.status == SessionStatus::Active) ++active;
  }
  report.chained = chained;
  report.immediate = admitted_ - chained;
  report.still_active = active;
  report.failover_count = failover_total_;
  report.batch_copies = batch_copies_;
  report.repair_copies = repair_copies_;

  const std::uint64_t decided = successes_ + failures_;
  report.has_playback_data = decided > 0;
  report.success_playback_prob =
      decided > 0 ? static_cast<double>(successes_) / static_cast<double>(decided) : 0.0;

  const double w = config_.batch_interval_s;
  for (std::size_t i = 0; i < bandwidth_busy_s_.size(); ++i) {
    const double start = static_cast<double>(i) * w;
    const double len = std::min(w, config_.sim_duration_s - start);
    report.window_start_s.push_back(start);
    const double channel_seconds = len * std::max(1, config_.proxy_channels);
    report.bandwidth_util.push_back(std::min(1.0, bandwidth_busy_s_[i] / channel_seconds));
    const double byte_seconds =
        len * static_cast<double>(std::max<std::uint64_t>(1, config_.proxy_buffer_bytes));
    report.buffer_util.push_back(std::min(1.0, buffer_byte_s_[i] / byte_seconds));
  }

  report.lifetime_by_n = lifetime_by_n_;
  report.lifetime_per_movie = lifetime_per_movie_;
  report.replica_fail_rate = config_.replica_fail_rate();
  report.replica_repair_rate = config_.replica_repair_rate();
  report.sweep_var = config_.arrival_per_hour;
  report.seeds = {config_.seed};
  report.config_echo = config_echo(config_);
  report.config_hash = hash_echo(report.config_echo);
  return report;
}

MetricsReport run_simulation(const SimConfig& config, const Simulator::Observer& observer) {
  Simulator sim(config);
  return sim.run(observer);
}

}  // namespace vodsim
