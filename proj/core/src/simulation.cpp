#include "trajwsn/simulation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "trajwsn/clustering.hpp"

namespace trajwsn {

namespace {

double unit_interval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int richest(const NetworkState& state, std::span<const int> candidates) {
  int best = -1;
  for (const int nid : candidates) {
    const Node& n = state.nodes[nid];
    if (!n.alive) continue;
    if (best < 0 || n.energy > state.nodes[best].energy) best = nid;
  }
  return best;
}

int richest_alive(const NetworkState& state) {
  std::vector<int> all(state.nodes.size());
  std::iota(all.begin(), all.end(), 0);
  return richest(state, all);
}

}  // namespace

void begin_round(NetworkState& state) {
  ++state.round;
  state.ledger = RoundLedger{};
}

RoundMetrics snapshot(const NetworkState& state) {
  RoundMetrics m;
  m.round = state.round;
  m.alive_count = static_cast<std::int64_t>(state.alive_count());
  m.packets_delivered_total = state.packets_delivered_total;
  m.energy_spent_this_round = state.ledger.energy_spent;
  m.residual_energy_total = state.residual_energy();
  m.head_rotations = state.ledger.rotations;
  m.reclusterings = state.ledger.reclusterings;
  return m;
}

std::size_t NetworkState::alive_count() const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.alive; }));
}

double NetworkState::residual_energy() const {
  double total = 0.0;
  for (const auto& n : nodes) total += n.energy;
  return total;
}

std::vector<int> NetworkState::heads() const {
  std::vector<int> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) out.push_back(c.head);
  return out;
}

bool NetworkState::spend(int nid, double joules) {
  Node& n = nodes[nid];
  if (!n.alive) return false;
  bool paid = true;
  if (joules <= n.energy) {
    n.energy -= joules;
    ledger.energy_spent += joules;
  } else {
    ledger.energy_spent += n.energy;
    n.energy = 0.0;
    paid = false;
  }
  if (n.energy <= 0.0) {
    n.energy = 0.0;
    n.alive = false;
  }
  return paid;
}

NetworkState deploy(std::int64_t n, double side, Point2D base_station, std::uint64_t seed, double initial_energy) {
  if (n < 1) throw DomainError("deployment needs at least one node");
  if (!(side > 0.0)) throw DomainError("field side must be > 0");
  NetworkState state;
  state.base_station = base_station;
  state.rng_seed = seed;
  std::mt19937_64 rng(seed);
  state.nodes.reserve(static_cast<std::size_t>(n));
  for (int nid = 0; nid < n; ++nid) {
    const double x = side * unit_interval(rng);
    const double y = side * unit_interval(rng);
    state.nodes.push_back(Node{nid, {x, y}, initial_energy, initial_energy > 0.0, Role::member, std::nullopt});
  }
  return state;
}

HelloPath trace_path(const NetworkState& state, int origin, double radio_range) {
  if (!(radio_range > 0.0)) throw DomainError("radio range must be > 0");
  HelloPath path;
  path.trajectory.tid = origin;
  int cur = origin;
  while (true) {
    path.nids.push_back(cur);
    path.trajectory.points.push_back(state.nodes[cur].pos);
    const double to_bs = euclidean(state.nodes[cur].pos, state.base_station);
    if (to_bs <= radio_range) break;

    int next = -1;
    double next_to_bs = to_bs;
    for (const auto& cand : state.nodes) {
      if (!cand.alive || cand.nid == cur) continue;
      if (euclidean(cand.pos, state.nodes[cur].pos) > radio_range) continue;
      const double d = euclidean(cand.pos, state.base_station);
      if (d < next_to_bs) {
        next_to_bs = d;
        next = cand.nid;
      }
    }
    if (next < 0) {
      path.fallback = true;
      break;
    }
    cur = next;
  }
  return path;
}

std::vector<HelloPath> build_trajectories(NetworkState& state, double radio_range, double control_bits,
                                          const RadioParams& radio) {
  std::vector<HelloPath> paths;
  for (const auto& node : state.nodes) {
    if (!node.alive) continue;
    HelloPath path = trace_path(state, node.nid, radio_range);
    if (path.fallback) ++state.ledger.fallback_hops;

    for (std::size_t hop = 0; hop < path.nids.size(); ++hop) {
      const int from = path.nids[hop];
      const bool last = hop + 1 == path.nids.size();
      const Point2D to = last ? state.base_station : state.nodes[path.nids[hop + 1]].pos;
      if (!state.spend(from, tx_energy(control_bits, euclidean(state.nodes[from].pos, to), radio))) break;
      if (!last && !state.spend(path.nids[hop + 1], rx_energy(control_bits, radio))) break;
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

void assign_to_heads(NetworkState& state, std::vector<int> heads) {
  std::sort(heads.begin(), heads.end());
  heads.erase(std::unique(heads.begin(), heads.end()), heads.end());

  state.clusters.clear();
  for (auto& n : state.nodes) {
    n.role = Role::member;
    n.cluster.reset();
  }
  for (std::size_t c = 0; c < heads.size(); ++c) {
    state.clusters.push_back(Cluster{heads[c], {}});
    Node& h = state.nodes[heads[c]];
    h.role = Role::head;
    h.cluster = c;
  }
  if (heads.empty()) return;
  for (auto& n : state.nodes) {
    if (!n.alive || n.role == Role::head) continue;
    std::size_t best = 0;
    double best_d = euclidean(n.pos, state.nodes[heads[0]].pos);
    for (std::size_t c = 1; c < heads.size(); ++c) {
      const double d = euclidean(n.pos, state.nodes[heads[c]].pos);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    n.cluster = best;
    state.clusters[best].members.push_back(n.nid);
  }
}

void elect_cluster_heads(NetworkState& state, std::span<const HelloPath> paths, const ElectionParams& params) {
  std::vector<int> heads;
  if (!paths.empty()) {
    std::vector<Trajectory> trajectories;
    trajectories.reserve(paths.size());
    for (const auto& p : paths) trajectories.push_back(p.trajectory);
    const DissimilarityMatrix matrix = build_dissimilarity_matrix(trajectories);

    double threshold = 0.0;
    if (params.threshold_mode == ThresholdMode::sweep) {
      threshold = sweep_threshold(matrix, static_cast<std::size_t>(std::max<std::int64_t>(1, params.sweep_target)));
    } else {
      threshold = params.threshold.value_or(default_threshold(matrix));
    }
    const ClusteringResult result = cluster_trajectories(matrix, threshold);
    for (const std::size_t rep : result.representatives.reps) {
      for (const int nid : paths[rep].nids) {
        if (state.nodes[nid].alive) heads.push_back(nid);
      }
    }
  }
  if (heads.empty()) {
    const int fallback = richest_alive(state);
    if (fallback >= 0) heads.push_back(fallback);
  }
  assign_to_heads(state, std::move(heads));
  ++state.ledger.reclusterings;
  state.reelection_pending = false;

  // Base-station broadcast announcing the clusters: free to send, paid to hear.
  for (const auto& n : state.nodes) {
    if (n.alive) state.spend(n.nid, rx_energy(params.control_bits, params.radio));
  }
}

RoundMetrics run_round(NetworkState& state, const RoundParams& params) {
  const double bits = params.message_bits;
  std::vector<std::int64_t> received(state.clusters.size(), 0);

  for (const auto& n : state.nodes) {
    if (!n.alive || n.role != Role::member || !n.cluster) continue;
    const Cluster& c = state.clusters[*n.cluster];
    const double d = euclidean(n.pos, state.nodes[c.head].pos);
    if (state.spend(n.nid, tx_energy(bits, d, params.radio)) && state.nodes[c.head].alive) {
      ++received[*n.cluster];
    }
  }

  for (std::size_t c = 0; c < state.clusters.size(); ++c) {
    const int h = state.clusters[c].head;
    if (!state.nodes[h].alive) continue;
    std::int64_t fused = 1;  // the head's own reading
    for (std::int64_t m = 0; m < received[c]; ++m) {
      if (!state.spend(h, rx_energy(bits, params.radio))) break;
      ++fused;
    }
    if (!state.nodes[h].alive) continue;
    if (!state.spend(h, aggregation_energy(bits, static_cast<double>(fused), params.radio))) continue;
    const double d = euclidean(state.nodes[h].pos, state.base_station);
    if (state.spend(h, tx_energy(bits, d, params.radio))) ++state.packets_delivered_total;
  }
  return snapshot(state);
}

std::int64_t maybe_rotate_heads(NetworkState& state, const RotationParams& params) {
  std::int64_t rotations = 0;
  std::vector<Cluster> kept;
  kept.reserve(state.clusters.size());

  for (auto& cluster : state.clusters) {
    std::erase_if(cluster.members, [&](int nid) { return !state.nodes[nid].alive; });
    const int old_head = cluster.head;
    const Node& head = state.nodes[old_head];

    int successor = -1;
    if (!head.alive) {
      if (cluster.members.empty()) continue;  // dissolved
      successor = richest(state, cluster.members);
    } else if (!cluster.members.empty()) {
      double mean = 0.0;
      for (const int nid : cluster.members) mean += state.nodes[nid].energy;
      mean /= static_cast<double>(cluster.members.size());
      const bool depleted = (params.rule.below_member_mean && head.energy < mean) ||
                            head.energy < params.rule.floor_fraction * params.initial_energy;
      const int candidate = richest(state, cluster.members);
      if (depleted && state.nodes[candidate].energy > head.energy) successor = candidate;
    }

    if (successor >= 0) {
      ++rotations;
      const int informer = head.alive ? old_head : successor;
      const Point2D at = state.nodes[informer].pos;
      double reach = 0.0;
      for (const int nid : cluster.members) {
        if (nid != informer) reach = std::max(reach, euclidean(at, state.nodes[nid].pos));
      }
      if (state.spend(informer, tx_energy(params.control_bits, reach, params.radio))) {
        for (const int nid : cluster.members) {
          if (nid != informer) state.spend(nid, rx_energy(params.control_bits, params.radio));
        }
      }
      state.spend(informer, tx_energy(params.control_bits, euclidean(at, state.base_station), params.radio));

      std::erase(cluster.members, successor);
      if (state.nodes[old_head].alive) {
        cluster.members.push_back(old_head);
        std::sort(cluster.members.begin(), cluster.members.end());
      }
      state.nodes[old_head].role = Role::member;
      state.nodes[successor].role = Role::head;
      cluster.head = successor;
    }
    kept.push_back(std::move(cluster));
  }

  state.clusters = std::move(kept);
  for (std::size_t c = 0; c < state.clusters.size(); ++c) {
    state.nodes[state.clusters[c].head].cluster = c;
    for (const int nid : state.clusters[c].members) state.nodes[nid].cluster = c;
  }
  // Rotation costs can kill; drop the dead again so the next round sees a
  // consistent cluster table.
  for (auto& cluster : state.clusters) {
    std::erase_if(cluster.members, [&](int nid) { return !state.nodes[nid].alive; });
  }

  state.ledger.rotations += rotations;
  if (rotations > 0) state.reelection_pending = true;
  return rotations;
}

void leach_baseline_elect(NetworkState& state, double p_head, std::mt19937_64& rng, double control_bits,
                          const RadioParams& radio) {
  if (!(p_head > 0.0 && p_head <= 1.0)) throw DomainError("p_head must lie in (0, 1]");
  std::vector<int> heads;
  for (const auto& n : state.nodes) {
    if (n.alive && unit_interval(rng) < p_head) heads.push_back(n.nid);
  }
  if (heads.empty()) {
    const int fallback = richest_alive(state);
    if (fallback >= 0) heads.push_back(fallback);
  }
  assign_to_heads(state, std::move(heads));
  ++state.ledger.reclusterings;

  // Join requests from members to their chosen head.
  for (const auto& c : state.clusters) {
    for (const int nid : c.members) {
      const double d = euclidean(state.nodes[nid].pos, state.nodes[c.head].pos);
      if (state.spend(nid, tx_energy(control_bits, d, radio))) state.spend(c.head, rx_energy(control_bits, radio));
    }
  }
}

std::uint64_t leach_stream_seed(std::uint64_t seed) {
  // splitmix64 finaliser
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<RoundMetrics> run_simulation(const SimConfig& config, Algorithm algorithm, std::uint64_t seed) {
  config.validate();
  NetworkState state =
      deploy(config.n_nodes, config.side_m, config.base_station(), seed, config.initial_energy_j);
  std::mt19937_64 leach_rng(leach_stream_seed(seed));

  const double control_bits = static_cast<double>(config.control_bits);
  const ElectionParams election{config.threshold_mode, config.threshold_m,
                                config.threshold_mode == ThresholdMode::sweep ? config.sweep_target() : 1,
                                control_bits, config.radio};
  const RoundParams round_params{config.message_bits(), config.radio};
  const RotationParams rotation{config.rotation, config.initial_energy_j, control_bits, config.radio};
  const double p_head = algorithm == Algorithm::leach ? config.head_probability() : 0.0;

  std::vector<RoundMetrics> metrics;
  for (std::int64_t r = 0; r < config.max_rounds && state.alive_count() > 0; ++r) {
    begin_round(state);
    if (algorithm == Algorithm::trajectory) {
      if (config.reelect_period > 0 && state.round > 1 && (state.round - 1) % config.reelect_period == 0) {
        state.reelection_pending = true;
      }
      if (state.reelection_pending) {
        const auto paths = build_trajectories(state, config.radio_range_m, control_bits, config.radio);
        if (state.alive_count() > 0) elect_cluster_heads(state, paths, election);
      }
    } else {
      leach_baseline_elect(state, p_head, leach_rng, control_bits, config.radio);
    }

    if (state.alive_count() > 0) {
      run_round(state, round_params);
      if (algorithm == Algorithm::trajectory) maybe_rotate_heads(state, rotation);
    }
    metrics.push_back(snapshot(state));
  }
  return metrics;
}

}  // namespace trajwsn
