#pragma once

// Test-only reference computations. These deliberately avoid the library's
// code paths: distances are recomputed from raw coordinates and clustering
// steps are replayed with explicit enumeration.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "trajwsn/trajectory.hpp"

namespace oracle {

inline double vertex_gap(const trajwsn::Point2D& a, const trajwsn::Point2D& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

inline double one_way(const trajwsn::Trajectory& a, const trajwsn::Trajectory& b) {
  double total = 0.0;
  for (const auto& p : a.points) {
    double nearest = std::numeric_limits<double>::max();
    for (const auto& q : b.points) nearest = std::fmin(nearest, vertex_gap(p, q));
    total += nearest;
  }
  return total / static_cast<double>(a.points.size());
}

inline double distance(const trajwsn::Trajectory& a, const trajwsn::Trajectory& b) {
  const double ab = one_way(a, b), ba = one_way(b, a);
  return ab > ba ? ab : ba;
}

using Table = std::vector<std::vector<double>>;

inline Table distance_table(const std::vector<trajwsn::Trajectory>& ts) {
  Table t(ts.size(), std::vector<double>(ts.size(), 0.0));
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = 0; j < ts.size(); ++j) {
      if (i != j) t[i][j] = distance(ts[i], ts[j]);
    }
  }
  return t;
}

/// Exhaustive medoid: cumulative sums for every member, first minimum in
/// ascending index order.
inline std::size_t medoid(const Table& d, std::vector<std::size_t> members) {
  std::vector<double> sums;
  for (auto i : members) {
    double s = 0.0;
    for (auto j : members) s += d[i][j];
    sums.push_back(s);
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < members.size(); ++k) {
    if (sums[k] < sums[best] || (sums[k] == sums[best] && members[k] < members[best])) best = k;
  }
  return members[best];
}

struct Replay {
  std::vector<std::size_t> labels;
  std::vector<std::size_t> reps;
  std::vector<double> costs;
};

/// Step-by-step best-response replay: label each item with the first
/// representative at minimum distance (representatives keep their own
/// cluster), recompute medoids, stop when the medoids repeat.
inline Replay best_response(const Table& d, std::vector<std::size_t> reps, int cap = 1000) {
  Replay r;
  for (int sweep = 0; sweep < cap; ++sweep) {
    std::vector<std::size_t> labels(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      std::size_t pick = 0;
      for (std::size_t c = 0; c < reps.size(); ++c) {
        if (d[i][reps[c]] < d[i][reps[pick]]) pick = c;
      }
      labels[i] = pick;
    }
    for (std::size_t c = 0; c < reps.size(); ++c) labels[reps[c]] = c;

    std::vector<std::size_t> next;
    double cost = 0.0;
    for (std::size_t c = 0; c < reps.size(); ++c) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (labels[i] == c) members.push_back(i);
      }
      next.push_back(medoid(d, members));
    }
    for (std::size_t i = 0; i < d.size(); ++i) cost += d[i][next[labels[i]]];
    r.costs.push_back(cost);
    r.labels = labels;
    if (next == reps) {
      r.reps = reps;
      return r;
    }
    reps = next;
  }
  r.reps = reps;
  return r;
}

/// Random trajectories on a coarse grid so that exact ties occur.
inline std::vector<trajwsn::Trajectory> random_trajectories(std::mt19937_64& rng, std::size_t max_count,
                                                            std::size_t max_points, double extent = 50.0,
                                                            bool grid = true) {
  std::uniform_int_distribution<std::size_t> count(1, max_count);
  std::uniform_int_distribution<std::size_t> len(1, max_points);
  std::uniform_real_distribution<double> coord(0.0, extent);
  std::uniform_int_distribution<int> cell(0, 10);
  const std::size_t n = count(rng);
  std::vector<trajwsn::Trajectory> out;
  for (std::size_t t = 0; t < n; ++t) {
    trajwsn::Trajectory tr{static_cast<int>(t), {}};
    const std::size_t k = len(rng);
    for (std::size_t i = 0; i < k; ++i) {
      if (grid) {
        tr.points.push_back({extent / 10.0 * cell(rng), extent / 10.0 * cell(rng)});
      } else {
        tr.points.push_back({coord(rng), coord(rng)});
      }
    }
    out.push_back(std::move(tr));
  }
  return out;
}

}  // namespace oracle
