#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "trajwsn/energy.hpp"
#include "trajwsn/trajectory.hpp"

namespace trajwsn {

enum class Algorithm { trajectory, leach };
enum class ThresholdMode { fixed, sweep };

std::string_view to_string(Algorithm a);
std::string_view to_string(ThresholdMode m);

/// Parse or validation failure. `key()` names the offending key when known,
/// `line()` the 1-based source line (0 when not from a file).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string key = {}, std::size_t line = 0)
      : std::runtime_error(what), key_(std::move(key)), line_(line) {}
  const std::string& key() const { return key_; }
  std::size_t line() const { return line_; }

 private:
  std::string key_;
  std::size_t line_;
};

struct RotationRule {
  /// Rotate when the head holds less energy than its members' mean.
  bool below_member_mean = true;
  /// Rotate when the head falls below this fraction of the initial energy.
  double floor_fraction = 0.05;
};

struct SimConfig {
  std::int64_t n_nodes = 100;
  double side_m = 100.0;
  /// Defaults to (side/2, side + 90) when unset, so every node of the
  /// field is at least 90 m from the base station.
  std::optional<Point2D> bs_position;
  double initial_energy_j = 2.0;
  std::int64_t message_bytes = 516;
  std::int64_t control_bits = 200;
  double radio_range_m = 30.0;

  ThresholdMode threshold_mode = ThresholdMode::fixed;
  /// Fixed-mode threshold; unset means half the largest pairwise distance.
  std::optional<double> threshold_m;
  /// Sweep-mode cluster target; unset means the analytic optimum.
  std::optional<std::int64_t> target_clusters;

  /// Rounds between periodic re-elections; 0 disables them.
  std::int64_t reelect_period = 20;
  RotationRule rotation;
  std::int64_t max_rounds = 100000;
  std::vector<std::uint64_t> seeds{1};
  std::vector<Algorithm> algorithms{Algorithm::trajectory};

  RadioParams radio;
  /// Head-to-base-station distance used by the cluster-count analysis.
  double analysis_d_bs = 90.0;
  /// Baseline head probability; unset means M/N with M from the analysis.
  std::optional<double> leach_p_head;

  /// Weight-function coefficients of the external comparison protocol.
  /// Accepted for documentation only.
  double eecr_c1 = 0.5;
  double eecr_c2 = 0.4;
  double eecr_c3 = 0.1;

  bool plot_per_seed = false;

  double message_bits() const { return 8.0 * static_cast<double>(message_bytes); }
  Point2D base_station() const;
  FieldParams field() const;
  double head_probability() const;
  std::int64_t sweep_target() const;

  /// Throws ConfigError naming the first field that violates its constraint.
  void validate() const;
};

/// Applies one `key = value` assignment. Keys use the dotted form
/// (`radio.eps1`, `rotation.floor_fraction`).
void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value, std::size_t line = 0);

/// Parses the flat key/value grammar (see README). Unknown keys are rejected.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::string& path);

/// All keys accepted by apply_setting, in documentation order.
const std::vector<std::string>& config_keys();

}  // namespace trajwsn
