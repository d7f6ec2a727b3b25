#pragma once

#include <cstdint>

namespace trajwsn {

/// First-order radio constants. Defaults are the usual 50 nJ/bit electronics,
/// 5 nJ/bit aggregation, 10 pJ/bit/m^2 free-space and 0.0013 pJ/bit/m^4
/// two-ray amplifier figures. The crossover distance is derived.
struct RadioParams {
  double e_tx = 50e-9;
  double e_rx = 50e-9;
  double e_da = 5e-9;
  double eps_free_space = 10e-12;
  double eps_two_ray = 0.0013e-12;

  /// Throws DomainError unless every constant is finite and > 0.
  void validate() const;
};

struct FieldParams {
  double n_nodes = 100;
  double side = 100.0;
  /// Head-to-base-station distance assumed by the analysis.
  double d_bs = 90.0;

  void validate() const;
};

/// sqrt(eps_free_space / eps_two_ray): free-space below, two-ray at or above.
double crossover_distance(const RadioParams& p);

double tx_energy(double bits, double distance, const RadioParams& p);
double rx_energy(double bits, const RadioParams& p);
double aggregation_energy(double bits, double messages, const RadioParams& p);

struct ClusterEnergy {
  double head = 0.0;        ///< per-frame head cost (receive, fuse, uplink)
  double member = 0.0;      ///< per-frame member cost at the mean in-cluster distance
  double cluster = 0.0;     ///< head + (N/M - 1) members
  double total = 0.0;       ///< M clusters
};

/// Closed-form per-frame energy for M equal clusters of N/M nodes on an
/// A x A field, heads at distance d_bs from the base station.
ClusterEnergy analytic_cluster_energy(double bits, double clusters, const FieldParams& field, const RadioParams& p);

struct OptimalClusterCount {
  double real = 0.0;
  std::int64_t rounded = 1;
};

/// Cluster count minimising analytic_cluster_energy(...).total over M.
/// Throws DomainError when eps_two_ray * d_bs^4 <= e_tx.
OptimalClusterCount optimal_cluster_count(const FieldParams& field, const RadioParams& p);

}  // namespace trajwsn
