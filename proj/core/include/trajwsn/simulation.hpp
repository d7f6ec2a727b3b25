#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "trajwsn/config.hpp"
#include "trajwsn/energy.hpp"
#include "trajwsn/trajectory.hpp"

namespace trajwsn {

enum class Role { member, head };

struct Node {
  int nid = 0;
  Point2D pos;
  double energy = 0.0;
  bool alive = true;
  Role role = Role::member;
  std::optional<std::size_t> cluster;
};

struct Cluster {
  int head = 0;
  std::vector<int> members;  ///< excludes the head, ascending nid
};

/// Per-round accumulators, reset when a round starts.
struct RoundLedger {
  double energy_spent = 0.0;
  std::int64_t rotations = 0;
  std::int64_t reclusterings = 0;
  std::int64_t fallback_hops = 0;
};

struct NetworkState {
  std::vector<Node> nodes;  ///< indexed by nid
  Point2D base_station;
  std::int64_t round = 0;
  std::vector<Cluster> clusters;
  std::uint64_t rng_seed = 0;
  std::int64_t packets_delivered_total = 0;
  bool reelection_pending = true;
  RoundLedger ledger;

  std::size_t alive_count() const;
  double residual_energy() const;
  std::vector<int> heads() const;

  /// Debits `joules` from node `nid`. Returns true when the node could pay in
  /// full; otherwise it spends what it has. A node dies once its energy
  /// reaches zero. Dead nodes pay nothing and return false.
  bool spend(int nid, double joules);
};

struct RoundMetrics {
  std::int64_t round = 0;
  std::int64_t alive_count = 0;
  std::int64_t packets_delivered_total = 0;
  double energy_spent_this_round = 0.0;
  double residual_energy_total = 0.0;
  std::int64_t head_rotations = 0;
  std::int64_t reclusterings = 0;

  friend bool operator==(const RoundMetrics&, const RoundMetrics&) = default;
};

/// Uniform deployment over [0, side]^2 driven by a 64-bit Mersenne twister,
/// so positions are identical across standard libraries.
NetworkState deploy(std::int64_t n, double side, Point2D base_station, std::uint64_t seed,
                    double initial_energy);

/// A node's hello path: the trajectory (originator plus relays, base station
/// excluded) and the node ids behind its vertices.
struct HelloPath {
  Trajectory trajectory;
  std::vector<int> nids;
  /// True when the last hop exceeded the radio range (no closer neighbour).
  bool fallback = false;
};

/// Greedy geographic forwarding towards the base station over alive nodes.
/// Charges every hop of a `control_bits` hello through the radio model.
std::vector<HelloPath> build_trajectories(NetworkState& state, double radio_range, double control_bits,
                                          const RadioParams& radio);

/// Geometry-only variant used by tests: no energy is charged.
HelloPath trace_path(const NetworkState& state, int origin, double radio_range);

struct ElectionParams {
  ThresholdMode threshold_mode = ThresholdMode::fixed;
  std::optional<double> threshold;
  std::int64_t sweep_target = 1;
  double control_bits = 0.0;
  RadioParams radio;
};

/// Clusters the hello paths, makes the nodes of every representative path
/// heads and attaches each other alive node to its nearest head.
void elect_cluster_heads(NetworkState& state, std::span<const HelloPath> paths, const ElectionParams& params);

/// Rebuilds clusters around an explicit head set (nearest head, ties to the
/// lowest nid).
void assign_to_heads(NetworkState& state, std::vector<int> heads);

/// Advances the round counter and clears the per-round ledger. Elections
/// run after this are billed to the new round.
void begin_round(NetworkState& state);

/// Metrics view of the state as it stands.
RoundMetrics snapshot(const NetworkState& state);

struct RoundParams {
  double message_bits = 0.0;
  RadioParams radio;
};

/// One data round: members report to their head in nid order, then each head
/// receives, fuses and uplinks one message. Returns the metrics of the round.
RoundMetrics run_round(NetworkState& state, const RoundParams& params);

struct RotationParams {
  RotationRule rule;
  double initial_energy = 0.0;
  double control_bits = 0.0;
  RadioParams radio;
};

/// Replaces depleted or dead heads with their richest alive member and
/// schedules a re-election when any head changed. Returns rotations made.
std::int64_t maybe_rotate_heads(NetworkState& state, const RotationParams& params);

/// Random-rotation baseline: every alive node heads with probability p_head.
void leach_baseline_elect(NetworkState& state, double p_head, std::mt19937_64& rng, double control_bits,
                          const RadioParams& radio);

/// Deterministic seed for the baseline's head draws, derived from the
/// deployment seed.
std::uint64_t leach_stream_seed(std::uint64_t seed);

std::vector<RoundMetrics> run_simulation(const SimConfig& config, Algorithm algorithm, std::uint64_t seed);

}  // namespace trajwsn
