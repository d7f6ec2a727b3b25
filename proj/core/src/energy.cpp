#include "trajwsn/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "trajwsn/trajectory.hpp"

namespace trajwsn {

namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) throw DomainError(std::string(name) + " must be finite and > 0");
}

void require_non_negative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) throw DomainError(std::string(name) + " must be finite and >= 0");
}

}  // namespace

void RadioParams::validate() const {
  require_positive(e_tx, "e_tx");
  require_positive(e_rx, "e_rx");
  require_positive(e_da, "e_da");
  require_positive(eps_free_space, "eps_free_space");
  require_positive(eps_two_ray, "eps_two_ray");
}

void FieldParams::validate() const {
  if (!(n_nodes >= 1.0)) throw DomainError("n_nodes must be >= 1");
  require_positive(side, "side");
  require_positive(d_bs, "d_bs");
}

double crossover_distance(const RadioParams& p) {
  require_positive(p.eps_free_space, "eps_free_space");
  require_positive(p.eps_two_ray, "eps_two_ray");
  return std::sqrt(p.eps_free_space / p.eps_two_ray);
}

double tx_energy(double bits, double distance, const RadioParams& p) {
  require_non_negative(bits, "bits");
  require_non_negative(distance, "distance");
  if (distance < crossover_distance(p)) {
    return bits * (p.e_tx + p.eps_free_space * distance * distance);
  }
  const double d2 = distance * distance;
  return bits * (p.e_tx + p.eps_two_ray * d2 * d2);
}

double rx_energy(double bits, const RadioParams& p) {
  require_non_negative(bits, "bits");
  return bits * p.e_rx;
}

double aggregation_energy(double bits, double messages, const RadioParams& p) {
  require_non_negative(bits, "bits");
  require_non_negative(messages, "messages");
  return bits * messages * p.e_da;
}

ClusterEnergy analytic_cluster_energy(double bits, double clusters, const FieldParams& field,
                                      const RadioParams& p) {
  field.validate();
  require_non_negative(bits, "bits");
  if (!(clusters >= 1.0 && clusters <= field.n_nodes)) throw DomainError("cluster count must lie in [1, N]");

  const double nodes_per_cluster = field.n_nodes / clusters;
  const double d_bs2 = field.d_bs * field.d_bs;
  // Mean squared member-to-head distance with the head at the cluster centre.
  const double d_member2 = field.side * field.side / (2.0 * std::numbers::pi * clusters);

  ClusterEnergy e;
  e.head = bits * p.e_tx * nodes_per_cluster + bits * p.e_da * nodes_per_cluster +
           bits * p.eps_two_ray * d_bs2 * d_bs2;
  e.member = bits * p.e_tx + bits * p.eps_free_space * d_member2;
  e.cluster = e.head + (nodes_per_cluster - 1.0) * e.member;
  e.total = clusters * e.cluster;
  return e;
}

OptimalClusterCount optimal_cluster_count(const FieldParams& field, const RadioParams& p) {
  field.validate();
  p.validate();
  const double d2 = field.d_bs * field.d_bs;
  const double denom = p.eps_two_ray * d2 * d2 - p.e_tx;
  if (!(denom > 0.0)) throw DomainError("base station too close for this model");
  OptimalClusterCount out;
  out.real = field.side * std::sqrt(field.n_nodes / (2.0 * std::numbers::pi) * p.eps_free_space / denom);
  out.rounded = std::max<std::int64_t>(1, std::llround(out.real));
  return out;
}

}  // namespace trajwsn
