#include "trajwsn/clustering.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace trajwsn {

std::vector<std::size_t> ClusterAssignment::members(std::size_t cluster) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == cluster) out.push_back(i);
  }
  return out;
}

std::vector<std::vector<std::size_t>> ClusterAssignment::groups() const {
  std::vector<std::vector<std::size_t>> out(k);
  for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]].push_back(i);
  return out;
}

ClusterAssignment initial_clusters(const DissimilarityMatrix& matrix, double threshold) {
  if (threshold < 0.0) throw DomainError("threshold must be >= 0");
  const std::size_t n = matrix.size();
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();

  ClusterAssignment out{std::vector<std::size_t>(n, kUnset), 0};
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (out.labels[seed] != kUnset) continue;
    const std::size_t c = out.k++;
    out.labels[seed] = c;
    for (std::size_t j = seed + 1; j < n; ++j) {
      if (out.labels[j] == kUnset && matrix(seed, j) <= threshold) out.labels[j] = c;
    }
  }
  return out;
}

std::size_t representative_of(std::span<const std::size_t> members, const DissimilarityMatrix& matrix) {
  if (members.empty()) throw DomainError("cannot pick a representative of an empty cluster");
  std::size_t best = members.front();
  double best_sum = std::numeric_limits<double>::infinity();
  for (const std::size_t i : members) {
    double sum = 0.0;
    for (const std::size_t j : members) sum += matrix(i, j);
    if (sum < best_sum || (sum == best_sum && i < best)) {
      best_sum = sum;
      best = i;
    }
  }
  return best;
}

RepresentativeSet representatives_of(const ClusterAssignment& assignment, const DissimilarityMatrix& matrix) {
  RepresentativeSet out;
  out.reps.reserve(assignment.k);
  for (const auto& g : assignment.groups()) out.reps.push_back(representative_of(g, matrix));
  return out;
}

double assignment_cost(const ClusterAssignment& assignment, const RepresentativeSet& reps,
                       const DissimilarityMatrix& matrix) {
  double cost = 0.0;
  for (std::size_t i = 0; i < assignment.labels.size(); ++i) cost += matrix(i, reps.reps[assignment.labels[i]]);
  return cost;
}

namespace {

ClusterAssignment assign_to_nearest(const DissimilarityMatrix& matrix, const RepresentativeSet& reps) {
  const std::size_t n = matrix.size();
  ClusterAssignment out{std::vector<std::size_t>(n, 0), reps.reps.size()};
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < reps.reps.size(); ++c) {
      if (matrix(i, reps.reps[c]) < matrix(i, reps.reps[best])) best = c;
    }
    out.labels[i] = best;
  }
  // A representative stays in its own cluster even when an identical
  // trajectory represents a lower-indexed one.
  for (std::size_t c = 0; c < reps.reps.size(); ++c) out.labels[reps.reps[c]] = c;
  return out;
}

}  // namespace

ClusteringResult recluster(const DissimilarityMatrix& matrix, const RepresentativeSet& initial,
                           std::size_t max_sweeps) {
  if (initial.reps.empty()) throw DomainError("re-clustering needs at least one representative");
  for (const auto r : initial.reps) {
    if (r >= matrix.size()) throw DomainError("representative index out of range");
  }

  ClusteringResult state;
  state.representatives = initial;
  while (true) {
    if (state.sweeps == max_sweeps) {
      throw ConvergenceError("re-clustering did not converge within " + std::to_string(max_sweeps) + " sweeps",
                             std::move(state));
    }
    state.assignment = assign_to_nearest(matrix, state.representatives);
    RepresentativeSet next = representatives_of(state.assignment, matrix);
    ++state.sweeps;
    state.cost_history.push_back(assignment_cost(state.assignment, next, matrix));
    if (next == state.representatives) return state;
    state.representatives = std::move(next);
  }
}

ClusteringResult cluster_trajectories(const DissimilarityMatrix& matrix, double threshold) {
  const ClusterAssignment initial = initial_clusters(matrix, threshold);
  return recluster(matrix, representatives_of(initial, matrix));
}

ClusteringResult cluster_trajectories(std::span<const Trajectory> ts, double threshold) {
  return cluster_trajectories(build_dissimilarity_matrix(ts), threshold);
}

double default_threshold(const DissimilarityMatrix& matrix) { return 0.5 * matrix.max_entry(); }

double sweep_threshold(const DissimilarityMatrix& matrix, std::size_t target_clusters) {
  std::vector<double> candidates;
  candidates.reserve(matrix.size() * matrix.size() / 2 + 1);
  candidates.push_back(0.0);
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = i + 1; j < matrix.size(); ++j) candidates.push_back(matrix(i, j));
  }
  std::sort(candidates.begin(), candidates.end(), std::greater<>());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const double t : candidates) {
    if (initial_clusters(matrix, t).k >= target_clusters) return t;
  }
  return 0.0;
}

}  // namespace trajwsn
