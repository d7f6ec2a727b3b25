#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "trajwsn/clustering.hpp"

namespace trajwsn {
namespace {

// A, B, C with d(A,B)=1, d(A,C)=10, d(B,C)=10.
DissimilarityMatrix abc_far() { return DissimilarityMatrix::from_rows({{0, 1, 10}, {1, 0, 10}, {10, 10, 0}}); }

std::vector<Trajectory> on_a_line(std::initializer_list<double> xs) {
  std::vector<Trajectory> out;
  int tid = 0;
  for (double x : xs) out.push_back(Trajectory{tid++, {{x, 0.0}}});
  return out;
}

TEST(InitialClusters, MaxThresholdGivesOneCluster) {
  const auto m = abc_far();
  const auto a = initial_clusters(m, m.max_entry());
  EXPECT_EQ(a.k, 1u);
  EXPECT_EQ(a.labels, (std::vector<std::size_t>{0, 0, 0}));
}

TEST(InitialClusters, ZeroThresholdGivesSingletons) {
  const auto a = initial_clusters(abc_far(), 0.0);
  EXPECT_EQ(a.k, 3u);
  EXPECT_EQ(a.labels, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(InitialClusters, LeaderPass) {
  const auto a = initial_clusters(abc_far(), 2.0);
  EXPECT_EQ(a.k, 2u);
  EXPECT_EQ(a.labels, (std::vector<std::size_t>{0, 0, 1}));
}

TEST(InitialClusters, MembershipTestedAgainstSeed) {
  // B is within 2 of A, C within 2 of B but 3 from A: C seeds its own cluster.
  const auto m = DissimilarityMatrix::from_rows({{0, 2, 3}, {2, 0, 2}, {3, 2, 0}});
  EXPECT_EQ(initial_clusters(m, 2.0).labels, (std::vector<std::size_t>{0, 0, 1}));
}

TEST(InitialClusters, NegativeThresholdRejected) { EXPECT_THROW(initial_clusters(abc_far(), -1.0), DomainError); }

TEST(RepresentativeOf, Examples) {
  const std::vector<std::size_t> just_a{0};
  EXPECT_EQ(representative_of(just_a, abc_far()), 0u);

  const auto m = DissimilarityMatrix::from_rows({{0, 1, 2}, {1, 0, 4}, {2, 4, 0}});
  const std::vector<std::size_t> all{0, 1, 2};
  EXPECT_EQ(representative_of(all, m), 0u);

  const auto pair = DissimilarityMatrix::from_rows({{0, 5}, {5, 0}});
  const std::vector<std::size_t> tie{1, 0};
  EXPECT_EQ(representative_of(tie, pair), 0u);
}

TEST(RepresentativeOf, EmptyClusterThrows) {
  EXPECT_THROW(representative_of(std::vector<std::size_t>{}, abc_far()), DomainError);
}

TEST(Recluster, EveryTrajectoryItsOwnRep) {
  const auto m = build_dissimilarity_matrix(on_a_line({0, 3, 7, 20}));
  const RepresentativeSet reps{{0, 1, 2, 3}};
  const auto r = recluster(m, reps);
  EXPECT_EQ(r.representatives, reps);
  EXPECT_EQ(r.assignment.labels, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(r.sweeps, 1u);
}

TEST(Recluster, SingleClusterCollapsesToGlobalMedoid) {
  const auto m = build_dissimilarity_matrix(on_a_line({0, 1, 2, 10, 11}));
  const auto r = recluster(m, RepresentativeSet{{4}});
  std::vector<std::size_t> all(5);
  std::iota(all.begin(), all.end(), 0);
  EXPECT_EQ(r.representatives.reps, (std::vector<std::size_t>{representative_of(all, m)}));
  EXPECT_EQ(r.representatives.reps[0], 2u);
}

TEST(Recluster, CapExceededCarriesLastState) {
  const auto m = build_dissimilarity_matrix(on_a_line({0, 1, 2, 10, 11}));
  try {
    recluster(m, RepresentativeSet{{0, 1}}, 1);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.last().sweeps, 1u);
    EXPECT_EQ(e.last().assignment.labels, (std::vector<std::size_t>{0, 1, 1, 1, 1}));
  }
  EXPECT_NO_THROW(recluster(m, RepresentativeSet{{0, 1}}));
}

TEST(Recluster, RejectsBadRepresentatives) {
  const auto m = abc_far();
  EXPECT_THROW(recluster(m, RepresentativeSet{}), DomainError);
  EXPECT_THROW(recluster(m, RepresentativeSet{{5}}), DomainError);
}

TEST(Recluster, MatchesBruteForceReplayOnSixTrajectories) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Trajectory> ts;
    while (ts.size() != 6) ts = oracle::random_trajectories(rng, 6, 4, 20.0, trial % 3 != 0);
    const auto table = oracle::distance_table(ts);
    const auto m = build_dissimilarity_matrix(ts);

    std::vector<std::size_t> idx(6);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t k = 1 + trial % 4;
    std::vector<std::size_t> seeds(idx.begin(), idx.begin() + static_cast<long>(k));

    const auto expected = oracle::best_response(table, seeds);
    const auto got = recluster(m, RepresentativeSet{seeds});
    EXPECT_EQ(got.representatives.reps, expected.reps) << "trial " << trial;
    EXPECT_EQ(got.assignment.labels, expected.labels) << "trial " << trial;
  }
}

TEST(ClusterTrajectories, SingleTrajectory) {
  const std::vector<Trajectory> ts{Trajectory{9, {{1, 2}, {3, 4}}}};
  const auto r = cluster_trajectories(ts, 1.0);
  EXPECT_EQ(r.assignment.k, 1u);
  EXPECT_EQ(r.representatives.reps, (std::vector<std::size_t>{0}));
}

TEST(ClusterTrajectories, TwoBundles) {
  // Each bundle: three parallel vertical two-point paths 1 m apart. Inside a
  // bundle d = 1 or 2; across bundles d >= 98.
  std::vector<Trajectory> ts;
  for (double base : {0.0, 100.0}) {
    for (double off : {0.0, 1.0, 2.0}) {
      ts.push_back(Trajectory{static_cast<int>(ts.size()), {{base + off, 0}, {base + off, 10}}});
    }
  }
  const auto r = cluster_trajectories(ts, 5.0);
  EXPECT_EQ(r.assignment.k, 2u);
  EXPECT_EQ(r.assignment.labels, (std::vector<std::size_t>{0, 0, 0, 1, 1, 1}));
  EXPECT_EQ(r.representatives.reps, (std::vector<std::size_t>{1, 4}));
}

TEST(ClusterTrajectories, IdenticalTrajectoriesAnyThreshold) {
  const std::vector<Trajectory> ts(5, Trajectory{0, {{1, 1}, {4, 2}}});
  for (double t : {0.0, 1.0, 100.0}) {
    const auto r = cluster_trajectories(ts, t);
    EXPECT_EQ(r.assignment.k, 1u);
    EXPECT_EQ(r.representatives.reps, (std::vector<std::size_t>{0}));
  }
}

TEST(ClusterTrajectories, FixedPointProperties) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    const auto ts = oracle::random_trajectories(rng, 12, 5, 40.0, trial % 2 == 0);
    const auto m = build_dissimilarity_matrix(ts);
    const double threshold = m.max_entry() * (trial % 5) / 5.0;
    const auto r = cluster_trajectories(m, threshold);
    const auto& labels = r.assignment.labels;
    const auto& reps = r.representatives.reps;

    ASSERT_EQ(labels.size(), ts.size());
    ASSERT_EQ(reps.size(), r.assignment.k);
    for (std::size_t c = 0; c < r.assignment.k; ++c) {
      const auto members = r.assignment.members(c);
      ASSERT_FALSE(members.empty());
      EXPECT_EQ(labels[reps[c]], c);
      double rep_sum = 0.0;
      for (auto j : members) rep_sum += m(reps[c], j);
      for (auto i : members) {
        double s = 0.0;
        for (auto j : members) s += m(i, j);
        EXPECT_GE(s, rep_sum);
      }
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (auto rep : reps) EXPECT_LE(m(i, reps[labels[i]]), m(i, rep));
    }
    for (std::size_t s = 1; s < r.cost_history.size(); ++s) {
      EXPECT_LE(r.cost_history[s], r.cost_history[s - 1] + 1e-12);
    }
    EXPECT_EQ(cluster_trajectories(m, threshold).assignment, r.assignment);
  }
}

TEST(Thresholds, DefaultAndSweep) {
  const auto m = build_dissimilarity_matrix(on_a_line({0, 1, 2, 10, 11, 30}));
  EXPECT_DOUBLE_EQ(default_threshold(m), 15.0);

  for (std::size_t target = 1; target <= 6; ++target) {
    const double t = sweep_threshold(m, target);
    EXPECT_GE(initial_clusters(m, t).k, target);
    // Every strictly larger candidate falls short.
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (m(i, j) > t) EXPECT_LT(initial_clusters(m, m(i, j)).k, target);
      }
    }
  }
  EXPECT_EQ(sweep_threshold(m, 1), m.max_entry());
  EXPECT_EQ(sweep_threshold(m, 6), 0.0);
}

}  // namespace
}  // namespace trajwsn
