#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "trajwsn/trajectory.hpp"

namespace trajwsn {

/// Cluster label per trajectory (indices into the input sequence / matrix).
struct ClusterAssignment {
  std::vector<std::size_t> labels;
  std::size_t k = 0;

  std::vector<std::size_t> members(std::size_t cluster) const;
  std::vector<std::vector<std::size_t>> groups() const;

  friend bool operator==(const ClusterAssignment&, const ClusterAssignment&) = default;
};

/// Representative (medoid) trajectory index for each cluster, in label order.
struct RepresentativeSet {
  std::vector<std::size_t> reps;

  friend bool operator==(const RepresentativeSet&, const RepresentativeSet&) = default;
};

struct ClusteringResult {
  ClusterAssignment assignment;
  RepresentativeSet representatives;
  std::size_t sweeps = 0;
  /// Total cost sum(dist(t, rep(t))) after each full assign + update sweep.
  std::vector<double> cost_history;
};

/// Raised when re-clustering does not settle within the sweep cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, ClusteringResult last)
      : std::runtime_error(what), last_(std::move(last)) {}
  const ClusteringResult& last() const { return last_; }

 private:
  ClusteringResult last_;
};

inline constexpr std::size_t kMaxReclusterSweeps = 100;

/// Sequential leader pass: the first unclassified trajectory seeds a cluster
/// and absorbs every unclassified trajectory within `threshold` of the seed.
ClusterAssignment initial_clusters(const DissimilarityMatrix& matrix, double threshold);

/// Medoid of `members`: minimal summed dissimilarity to the other members,
/// ties to the lowest index.
std::size_t representative_of(std::span<const std::size_t> members, const DissimilarityMatrix& matrix);

RepresentativeSet representatives_of(const ClusterAssignment& assignment, const DissimilarityMatrix& matrix);

/// Sum over trajectories of the distance to their cluster's representative.
double assignment_cost(const ClusterAssignment& assignment, const RepresentativeSet& reps,
                       const DissimilarityMatrix& matrix);

/// Assign-to-nearest-representative / recompute-medoid alternation until the
/// representatives stop changing.
ClusteringResult recluster(const DissimilarityMatrix& matrix, const RepresentativeSet& initial,
                           std::size_t max_sweeps = kMaxReclusterSweeps);

ClusteringResult cluster_trajectories(const DissimilarityMatrix& matrix, double threshold);
ClusteringResult cluster_trajectories(std::span<const Trajectory> ts, double threshold);

/// 0.5 x the largest pairwise distance.
double default_threshold(const DissimilarityMatrix& matrix);

/// Largest threshold (taken from the matrix entries) for which the leader
/// pass yields at least `target_clusters` clusters; 0 if none does.
double sweep_threshold(const DissimilarityMatrix& matrix, std::size_t target_clusters);

}  // namespace trajwsn
