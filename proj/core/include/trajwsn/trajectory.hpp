#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace trajwsn {

/// Raised when an operation receives input outside its mathematical domain
/// (empty trajectories, negative bit counts, non-positive radio constants).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

double euclidean(Point2D a, Point2D b);

/// A hello path: the ordered positions a packet visits on its way to the
/// base station. `tid` is the originating node id in the simulator.
struct Trajectory {
  int tid = 0;
  std::vector<Point2D> points;
};

/// Dense symmetric n x n matrix of trajectory distances, row-major.
class DissimilarityMatrix {
 public:
  DissimilarityMatrix() = default;
  explicit DissimilarityMatrix(std::size_t n);

  /// Builds from explicit rows; validates shape, zero diagonal, symmetry,
  /// finiteness and non-negativity.
  static DissimilarityMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }

  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double v);

  double max_entry() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// Distance from `p` to the nearest vertex of `t`.
double point_to_trajectory_distance(Point2D p, const Trajectory& t);

/// Mean over the vertices of `from` of their nearest-vertex distance to `to`.
/// Not symmetric.
double one_way_distance(const Trajectory& from, const Trajectory& to);

/// max(one_way_distance(a, b), one_way_distance(b, a)).
double trajectory_distance(const Trajectory& a, const Trajectory& b);

DissimilarityMatrix build_dissimilarity_matrix(std::span<const Trajectory> ts);

/// Reads `tid,seq,x,y` rows (header required) into trajectories ordered by
/// tid, vertices ordered by seq. Throws std::runtime_error with the line
/// number on malformed input.
std::vector<Trajectory> read_trajectory_csv(std::istream& in);
std::vector<Trajectory> read_trajectory_csv_file(const std::string& path);

}  // namespace trajwsn
