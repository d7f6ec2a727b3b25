// trajwsn: run cluster-head election experiments, evaluate the analytic
// cluster count, or cluster a trajectory file.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "trajwsn/clustering.hpp"
#include "trajwsn/config.hpp"
#include "trajwsn/energy.hpp"
#include "trajwsn/report.hpp"
#include "trajwsn/trajectory.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct SimulateArgs {
  std::string config_path;
  std::string out_dir;
  std::int64_t seed_count = 0;
  std::string algorithm;
  bool plot = false;
  bool per_seed = false;
  unsigned threads = 0;
  std::vector<std::string> overrides;
};

int simulate(const SimulateArgs& args) {
  trajwsn::SimConfig cfg;
  try {
    cfg = args.config_path.empty() ? trajwsn::SimConfig{} : trajwsn::load_config(args.config_path);
    for (const auto& kv : args.overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw trajwsn::ConfigError("--set expects key=value, got '" + kv + "'");
      trajwsn::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!args.algorithm.empty()) trajwsn::apply_setting(cfg, "algorithm", args.algorithm);
    if (args.seed_count > 0) {
      const std::uint64_t first = cfg.seeds.front();
      cfg.seeds.clear();
      for (std::int64_t i = 0; i < args.seed_count; ++i) cfg.seeds.push_back(first + static_cast<std::uint64_t>(i));
    } else if (args.seed_count < 0) {
      throw trajwsn::ConfigError("--seed-count must be positive", "seeds");
    }
    if (args.per_seed) cfg.plot_per_seed = true;
    cfg.validate();
  } catch (const trajwsn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const auto results = trajwsn::run_scenario(cfg, args.threads);
    trajwsn::write_csv(results, args.out_dir);
    if (args.plot) trajwsn::emit_plots(results, args.out_dir, cfg.plot_per_seed);

    int status = 0;
    for (const auto& r : results) {
      if (r.error) {
        std::cerr << "run failed: " << *r.error << '\n';
        status = kExitRuntime;
        continue;
      }
      std::cout << trajwsn::to_string(r.algorithm) << " seed " << r.seed << ": first death after "
                << r.summary.first_death_round << " rounds, last death after " << r.summary.last_death_round
                << " rounds, " << r.summary.total_packets << " packets\n";
    }
    return status;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

int optimal_m(double n, double side, double d1, const trajwsn::RadioParams& radio) {
  try {
    const trajwsn::FieldParams field{n, side, d1};
    const auto m = trajwsn::optimal_cluster_count(field, radio);
    std::cout << "M = " << trajwsn::format_double(m.real) << " (rounded " << m.rounded << ")\n";
    return 0;
  } catch (const trajwsn::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

int cluster(const std::string& input, std::optional<double> threshold, std::int64_t sweep) {
  try {
    const auto ts = trajwsn::read_trajectory_csv_file(input);
    if (ts.empty()) throw std::runtime_error("no trajectories in '" + input + "'");
    const auto matrix = trajwsn::build_dissimilarity_matrix(ts);
    double t = threshold.value_or(trajwsn::default_threshold(matrix));
    if (sweep > 0) t = trajwsn::sweep_threshold(matrix, static_cast<std::size_t>(sweep));
    const auto result = trajwsn::cluster_trajectories(matrix, t);

    std::cerr << "threshold " << trajwsn::format_double(t) << ", " << result.assignment.k << " clusters, "
              << result.sweeps << " sweeps\n";
    std::cout << "tid,cluster,representative\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto c = result.assignment.labels[i];
      std::cout << ts[i].tid << ',' << c << ',' << (result.representatives.reps[c] == i ? 1 : 0) << '\n';
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trajectory-clustering cluster-head election for wireless sensor networks"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run the configured scenario and write CSV (and SVG) output");
  simulate_cmd->add_option("--config", sim.config_path, "Config file (defaults apply when omitted)");
  simulate_cmd->add_option("--out", sim.out_dir, "Output directory")->required();
  simulate_cmd->add_option("--seed-count", sim.seed_count, "Use this many consecutive seeds from the first one");
  simulate_cmd->add_option("--algorithm", sim.algorithm, "trajectory, leach or both")
      ->check(CLI::IsMember({"trajectory", "leach", "both"}));
  simulate_cmd->add_flag("--plot", sim.plot, "Also write alive_nodes.svg and packets_delivered.svg");
  simulate_cmd->add_flag("--per-seed", sim.per_seed, "Overlay per-seed curves on the plots");
  simulate_cmd->add_option("--threads", sim.threads, "Worker threads (0 = hardware concurrency)");
  simulate_cmd->add_option("--set", sim.overrides, "Override a config key, e.g. --set radio_range_m=35");

  double n = 100.0, side = 100.0, d1 = 90.0;
  trajwsn::RadioParams radio;
  auto* optimal_cmd = app.add_subcommand("optimal-m", "Analytic energy-optimal number of clusters");
  optimal_cmd->add_option("--n", n, "Number of nodes")->capture_default_str();
  optimal_cmd->add_option("--side", side, "Field side in metres")->capture_default_str();
  optimal_cmd->add_option("--d1", d1, "Head to base station distance in metres")->capture_default_str();
  optimal_cmd->add_option("--e-tx", radio.e_tx, "Electronics energy, J/bit")->capture_default_str();
  optimal_cmd->add_option("--eps1", radio.eps_free_space, "Free-space amplifier, J/bit/m^2")->capture_default_str();
  optimal_cmd->add_option("--eps2", radio.eps_two_ray, "Two-ray amplifier, J/bit/m^4")->capture_default_str();

  std::string input;
  std::optional<double> threshold;
  std::int64_t sweep = 0;
  auto* cluster_cmd = app.add_subcommand("cluster", "Cluster trajectories from a tid,seq,x,y CSV file");
  cluster_cmd->add_option("--input", input, "Trajectory CSV")->required()->check(CLI::ExistingFile);
  cluster_cmd->add_option("--threshold", threshold, "Leader threshold in metres (default: half the max distance)");
  cluster_cmd->add_option("--sweep", sweep, "Pick the largest threshold giving at least this many clusters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*simulate_cmd) return simulate(sim);
  if (*optimal_cmd) return optimal_m(n, side, d1, radio);
  return cluster(input, threshold, sweep);
}
