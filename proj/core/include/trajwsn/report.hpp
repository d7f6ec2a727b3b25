#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "trajwsn/config.hpp"
#include "trajwsn/simulation.hpp"

namespace trajwsn {

struct RunSummary {
  /// Rounds completed with every node still alive.
  std::int64_t first_death_round = 0;
  /// Rounds completed with at least one node alive.
  std::int64_t last_death_round = 0;
  std::int64_t total_packets = 0;
  double total_energy_j = 0.0;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

struct RunResult {
  Algorithm algorithm = Algorithm::trajectory;
  std::uint64_t seed = 0;
  std::vector<RoundMetrics> rounds;
  RunSummary summary;
  /// Set when the run failed; `rounds` is then empty.
  std::optional<std::string> error;
};

RunSummary summarize(std::span<const RoundMetrics> rounds, std::int64_t n_nodes);

/// One run per (algorithm, seed), ordered by algorithm as configured then by
/// seed as listed. Runs execute on up to `threads` workers (0 = hardware).
std::vector<RunResult> run_scenario(const SimConfig& config, unsigned threads = 0);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

inline constexpr const char* kRoundsHeader =
    "algorithm,seed,round,alive,packets_cum,energy_spent_j,residual_j,rotations,reclusterings";
inline constexpr const char* kSummaryHeader =
    "algorithm,seed,first_death_round,last_death_round,total_packets,total_energy_j";

/// Writes rounds.csv and summary.csv into `out_dir` (created if missing).
void write_csv(std::span<const RunResult> results, const std::filesystem::path& out_dir);

struct CurvePoint {
  double round = 0.0;
  double value = 0.0;
};

struct Curve {
  std::string label;
  std::vector<CurvePoint> points;
};

enum class PlotMetric { alive, packets };

/// Per-algorithm mean over seeds, round by round. Runs that ended early hold
/// their final value.
std::vector<Curve> seed_averaged_curves(std::span<const RunResult> results, PlotMetric metric);

struct PlotFrame {
  double width = 720.0;
  double height = 440.0;
  double left = 70.0;
  double right = 170.0;
  double top = 40.0;
  double bottom = 55.0;

  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;

  double to_x(double round) const;
  double to_y(double value) const;
};

std::string render_svg(std::span<const Curve> curves, const std::string& title, const std::string& y_label,
                       std::span<const Curve> faint = {});

/// Writes alive_nodes.svg and packets_delivered.svg into `out_dir`.
void emit_plots(std::span<const RunResult> results, const std::filesystem::path& out_dir, bool per_seed = false);

}  // namespace trajwsn
