#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "trajwsn/trajectory.hpp"

namespace trajwsn {
namespace {

Trajectory traj(int tid, std::vector<Point2D> pts) { return Trajectory{tid, std::move(pts)}; }

TEST(PointToTrajectory, VertexHitIsZero) {
  EXPECT_DOUBLE_EQ(point_to_trajectory_distance({0, 0}, traj(0, {{0, 0}, {5, 5}})), 0.0);
}

TEST(PointToTrajectory, SingleVertex) {
  EXPECT_DOUBLE_EQ(point_to_trajectory_distance({0, 0}, traj(0, {{3, 4}})), 5.0);
}

TEST(PointToTrajectory, NearestVertexNotSegment) {
  // The segment (0,2)-(4,0) passes closer to (1,0) than either vertex; only
  // vertices count.
  EXPECT_NEAR(point_to_trajectory_distance({1, 0}, traj(0, {{0, 2}, {4, 0}})), 2.23606797749979, 1e-12);
}

TEST(PointToTrajectory, EmptyIsDomainError) {
  EXPECT_THROW(point_to_trajectory_distance({0, 0}, traj(3, {})), DomainError);
}

TEST(OneWayDistance, IdenticalIsZero) {
  const auto t = traj(0, {{0, 0}, {1, 0}});
  EXPECT_EQ(one_way_distance(t, t), 0.0);
}

TEST(OneWayDistance, AveragesVertexDistances) {
  EXPECT_NEAR(one_way_distance(traj(0, {{0, 0}, {1, 0}}), traj(1, {{0, 2}})), 2.118033988749895, 1e-12);
}

TEST(OneWayDistance, Asymmetric) {
  const auto a = traj(0, {{0, 0}});
  const auto b = traj(1, {{0, 0}, {3, 4}});
  EXPECT_EQ(one_way_distance(a, b), 0.0);
  EXPECT_DOUBLE_EQ(one_way_distance(b, a), 2.5);
}

TEST(OneWayDistance, EmptyOperandsThrow) {
  EXPECT_THROW(one_way_distance(traj(0, {}), traj(1, {{0, 0}})), DomainError);
  EXPECT_THROW(one_way_distance(traj(0, {{0, 0}}), traj(1, {})), DomainError);
}

TEST(TrajectoryDistance, Examples) {
  const auto t = traj(0, {{3, 1}, {7, 2}, {-1, 5}});
  EXPECT_EQ(trajectory_distance(t, t), 0.0);
  EXPECT_DOUBLE_EQ(trajectory_distance(traj(0, {{0, 0}}), traj(1, {{0, 0}, {3, 4}})), 2.5);
  EXPECT_DOUBLE_EQ(trajectory_distance(traj(0, {{0, 0}, {1, 0}}), traj(1, {{0, 1}, {1, 1}})), 1.0);
}

TEST(TrajectoryDistance, PropertiesOnRandomPairs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> shift(-500.0, 500.0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto ts = oracle::random_trajectories(rng, 2, 6, 100.0, trial % 2 == 0);
    if (ts.size() < 2) continue;
    const auto& a = ts[0];
    const auto& b = ts[1];
    const double ab = trajectory_distance(a, b);
    EXPECT_EQ(ab, trajectory_distance(b, a));
    EXPECT_GE(one_way_distance(a, b), 0.0);
    EXPECT_EQ(trajectory_distance(a, a), 0.0);
    EXPECT_NEAR(ab, oracle::distance(a, b), 1e-9 * std::max(1.0, ab));

    const Point2D v{shift(rng), shift(rng)};
    auto moved = [&](Trajectory t) {
      for (auto& p : t.points) p = {p.x + v.x, p.y + v.y};
      return t;
    };
    EXPECT_NEAR(trajectory_distance(moved(a), moved(b)), ab, 1e-9 * std::max(1.0, ab));
  }
}

TEST(TrajectoryDistance, SubsetHasZeroOneWay) {
  const auto big = traj(0, {{0, 0}, {10, 3}, {4, 4}, {9, 9}});
  const auto sub = traj(1, {{9, 9}, {0, 0}, {9, 9}});
  EXPECT_EQ(one_way_distance(sub, big), 0.0);
  EXPECT_GT(one_way_distance(big, sub), 0.0);
}

TEST(DissimilarityMatrix, SingleAndIdentical) {
  const std::vector<Trajectory> one{traj(0, {{1, 1}})};
  const auto m1 = build_dissimilarity_matrix(one);
  ASSERT_EQ(m1.size(), 1u);
  EXPECT_EQ(m1(0, 0), 0.0);

  const std::vector<Trajectory> twins{traj(0, {{1, 1}, {2, 2}}), traj(1, {{1, 1}, {2, 2}})};
  const auto m2 = build_dissimilarity_matrix(twins);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(m2(i, j), 0.0);
  }
}

TEST(DissimilarityMatrix, EntriesMatchPairwiseCalls) {
  const std::vector<Trajectory> ts{traj(0, {{0, 0}}), traj(1, {{0, 0}, {3, 4}}), traj(2, {{0, 0}, {1, 0}})};
  const auto m = build_dissimilarity_matrix(ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    EXPECT_EQ(m(i, i), 0.0);
    for (std::size_t j = 0; j < ts.size(); ++j) {
      if (i != j) EXPECT_EQ(m(i, j), trajectory_distance(ts[i], ts[j]));
      EXPECT_EQ(m(i, j), m(j, i));
    }
  }
  EXPECT_DOUBLE_EQ(m(0, 1), 2.5);
}

TEST(DissimilarityMatrix, RejectsEmptyInputs) {
  EXPECT_THROW(build_dissimilarity_matrix(std::vector<Trajectory>{}), DomainError);
  EXPECT_THROW(build_dissimilarity_matrix(std::vector<Trajectory>{traj(0, {{0, 0}}), traj(1, {})}), DomainError);
}

TEST(DissimilarityMatrix, FromRowsValidates) {
  EXPECT_NO_THROW(DissimilarityMatrix::from_rows({{0, 1}, {1, 0}}));
  EXPECT_THROW(DissimilarityMatrix::from_rows({{0, 1}, {2, 0}}), DomainError);
  EXPECT_THROW(DissimilarityMatrix::from_rows({{1, 1}, {1, 0}}), DomainError);
  EXPECT_THROW(DissimilarityMatrix::from_rows({{0, -1}, {-1, 0}}), DomainError);
  EXPECT_THROW(DissimilarityMatrix::from_rows({{0, 1}}), DomainError);
}

TEST(TrajectoryCsv, ReadsAndOrdersBySequence) {
  std::istringstream in("tid,seq,x,y\n7,1,3,4\n2,0,1.5,2\n7,0,0,0\n\n2,1,-1,2e1\n");
  const auto ts = read_trajectory_csv(in);
  ASSERT_EQ(ts.size(), 2u);
  EXPECT_EQ(ts[0].tid, 2);
  EXPECT_EQ(ts[0].points, (std::vector<Point2D>{{1.5, 2}, {-1, 20}}));
  EXPECT_EQ(ts[1].tid, 7);
  EXPECT_EQ(ts[1].points, (std::vector<Point2D>{{0, 0}, {3, 4}}));
}

TEST(TrajectoryCsv, ReportsLineOfBadRow) {
  std::istringstream in("tid,seq,x,y\n1,0,0,0\n1,1,abc,0\n");
  try {
    read_trajectory_csv(in);
    FAIL() << "expected a parse error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(TrajectoryCsv, RejectsBadHeaderAndDuplicates) {
  std::istringstream bad_header("id,seq,x,y\n");
  EXPECT_THROW(read_trajectory_csv(bad_header), std::runtime_error);
  std::istringstream dup("tid,seq,x,y\n1,0,0,0\n1,0,1,1\n");
  EXPECT_THROW(read_trajectory_csv(dup), std::runtime_error);
}

}  // namespace
}  // namespace trajwsn
