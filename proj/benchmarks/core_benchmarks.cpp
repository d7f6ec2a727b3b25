#include <benchmark/benchmark.h>

#include <random>

#include "trajwsn/clustering.hpp"
#include "trajwsn/simulation.hpp"

namespace {

using namespace trajwsn;

std::vector<HelloPath> hello_paths(std::int64_t n) {
  SimConfig cfg;
  auto state = deploy(n, cfg.side_m, cfg.base_station(), 1, cfg.initial_energy_j);
  return build_trajectories(state, cfg.radio_range_m, 0, cfg.radio);
}

void BM_DissimilarityMatrix(benchmark::State& state) {
  const auto paths = hello_paths(state.range(0));
  std::vector<Trajectory> ts;
  for (const auto& p : paths) ts.push_back(p.trajectory);
  for (auto _ : state) benchmark::DoNotOptimize(build_dissimilarity_matrix(ts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DissimilarityMatrix)->RangeMultiplier(2)->Range(25, 400)->Complexity();

void BM_ClusterTrajectories(benchmark::State& state) {
  const auto paths = hello_paths(state.range(0));
  std::vector<Trajectory> ts;
  for (const auto& p : paths) ts.push_back(p.trajectory);
  const auto m = build_dissimilarity_matrix(ts);
  const double t = default_threshold(m);
  for (auto _ : state) benchmark::DoNotOptimize(cluster_trajectories(m, t));
}
BENCHMARK(BM_ClusterTrajectories)->Arg(100)->Arg(200);

void BM_SweepThreshold(benchmark::State& state) {
  const auto paths = hello_paths(state.range(0));
  std::vector<Trajectory> ts;
  for (const auto& p : paths) ts.push_back(p.trajectory);
  const auto m = build_dissimilarity_matrix(ts);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_threshold(m, 7));
}
BENCHMARK(BM_SweepThreshold)->Arg(100);

void BM_Election(benchmark::State& state) {
  SimConfig cfg;
  const ElectionParams params{ThresholdMode::fixed, std::nullopt, 1, 200, cfg.radio};
  for (auto _ : state) {
    auto s = deploy(cfg.n_nodes, cfg.side_m, cfg.base_station(), 1, cfg.initial_energy_j);
    const auto paths = build_trajectories(s, cfg.radio_range_m, 200, cfg.radio);
    elect_cluster_heads(s, paths, params);
    benchmark::DoNotOptimize(s.clusters.data());
  }
}
BENCHMARK(BM_Election);

void BM_DataRound(benchmark::State& state) {
  SimConfig cfg;
  auto s = deploy(cfg.n_nodes, cfg.side_m, cfg.base_station(), 1, 1e9);
  std::mt19937_64 rng(1);
  leach_baseline_elect(s, 0.07, rng, 0, cfg.radio);
  const RoundParams params{cfg.message_bits(), cfg.radio};
  for (auto _ : state) benchmark::DoNotOptimize(run_round(s, params));
}
BENCHMARK(BM_DataRound);

void BM_SmallSimulation(benchmark::State& state) {
  SimConfig cfg;
  cfg.n_nodes = 50;
  cfg.initial_energy_j = 0.2;
  const auto algorithm = state.range(0) == 0 ? Algorithm::trajectory : Algorithm::leach;
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(cfg, algorithm, 1));
}
BENCHMARK(BM_SmallSimulation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
