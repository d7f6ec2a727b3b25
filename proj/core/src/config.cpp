#include "trajwsn/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace trajwsn {

std::string_view to_string(Algorithm a) { return a == Algorithm::trajectory ? "trajectory" : "leach"; }
std::string_view to_string(ThresholdMode m) { return m == ThresholdMode::fixed ? "fixed" : "sweep"; }

Point2D SimConfig::base_station() const {
  return bs_position.value_or(Point2D{side_m / 2.0, side_m + 90.0});
}

FieldParams SimConfig::field() const {
  return FieldParams{static_cast<double>(n_nodes), side_m, analysis_d_bs};
}

double SimConfig::head_probability() const {
  if (leach_p_head) return *leach_p_head;
  const auto m = optimal_cluster_count(field(), radio).rounded;
  return std::min(1.0, static_cast<double>(m) / static_cast<double>(n_nodes));
}

std::int64_t SimConfig::sweep_target() const {
  if (target_clusters) return *target_clusters;
  return optimal_cluster_count(field(), radio).rounded;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected,
                            std::size_t line) {
  std::string msg;
  if (line) msg += "line " + std::to_string(line) + ": ";
  msg += "invalid value '" + std::string(value) + "' for " + std::string(key) + " (expected " +
         std::string(expected) + ")";
  throw ConfigError(msg, std::string(key), line);
}

template <typename T>
T parse_num(std::string_view key, std::string_view value, std::size_t line) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    bad_value(key, value, std::is_floating_point_v<T> ? "a number" : "an integer", line);
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value, std::size_t line) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value, "true or false", line);
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss{std::string(value)};
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

using Setter = std::function<void(SimConfig&, std::string_view, std::string_view, std::size_t)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = [] {
    std::vector<std::pair<std::string, Setter>> t;
    auto real = [&t](std::string key, auto member) {
      t.emplace_back(std::move(key), [member](SimConfig& c, std::string_view k, std::string_view v, std::size_t l) {
        member(c) = parse_num<double>(k, v, l);
      });
    };
    auto integer = [&t](std::string key, auto member) {
      t.emplace_back(std::move(key), [member](SimConfig& c, std::string_view k, std::string_view v, std::size_t l) {
        member(c) = parse_num<std::int64_t>(k, v, l);
      });
    };

    integer("n_nodes", [](SimConfig& c) -> std::int64_t& { return c.n_nodes; });
    real("side_m", [](SimConfig& c) -> double& { return c.side_m; });
    t.emplace_back("bs_x", [](SimConfig& c, std::string_view k, std::string_view v, std::size_t l) {
      Point2D p = c.base_station();
      p.x = parse_num<double>(k, v, l);
      c.bs_position = p;
    });
    t.emplace_back("bs_y", [](SimConfig& c, std::string_view k, std::string_view v, std::size_t l) {
      Point2D p = c.base_station();
      p.y = parse_num<double>(k, v, l);
      c.bs_position = p;
    });
    real("initial_energy_j", [](SimConfig& c) -> double& { return c.initial_energy_j; });
    integer("message_bytes", [](SimConfig& c) -> std::int64_t& { return c.message_bytes; });
    integer("control_bits", [](SimConfig& c) -> std::int64_t& { return c.control_bits; });
    real("radio_range_m", [](SimConfig& c) -> double& { return c.radio_range_m; });
    t.emplace_back("threshold_mode", [](SimConfig& c, std::string_view k, std::string_view v, std::size_t l) {
      if (v == "fixed") {
        c.threshold_mode = ThresholdMode::fixed;
      } else if (v == "sweep") {
        c.threshold_mode = ThresholdMode::sweep;
      } else {
        bad_value(k, v, "fixed or sweep", l);
      }
    });
    t.emplace_back("threshold_m", [](SimConfig& c, std::string_view k, std::string_view v, std::size_t l) {
      c.threshold_m = parse_num<double>(k, v, l);
    });
    t.emplace_back("target_clusters", [](SimConfig& c, std::string_view k, std::string_view v, std::size_t l) {
      c.target_clusters = parse_num<std::int64_t>(k, v, l);
    });
    integer("reelect_period", [](SimConfig& c) -> std::int64_t& { return c.reelect_period; });
    t.emplace_back("rotation.below_member_mean",
                   [](SimConfig& c, std::string_view k, std::string_view v, std::size_t l) {
                     c.rotation.below_member_mean = parse_bool(k, v, l);
                   });
    real("rotation.floor_fraction", [](SimConfig& c) -> double& { return c.rotation.floor_fraction; });
    integer("max_rounds", [](SimConfig& c) -> std::int64_t& { return c.max_rounds; });
    t.emplace_back("seeds", [](SimConfig& c, std::string_view k, std::string_view v, std::size_t l) {
      c.seeds.clear();
      for (const auto& s : split_list(v)) c.seeds.push_back(parse_num<std::uint64_t>(k, s, l));
    });
    t.emplace_back("algorithm", [](SimConfig& c, std::string_view k, std::string_view v, std::size_t l) {
      if (v == "trajectory") {
        c.algorithms = {Algorithm::trajectory};
      } else if (v == "leach") {
        c.algorithms = {Algorithm::leach};
      } else if (v == "both") {
        c.algorithms = {Algorithm::trajectory, Algorithm::leach};
      } else {
        bad_value(k, v, "trajectory, leach or both", l);
      }
    });
    real("radio.e_tx", [](SimConfig& c) -> double& { return c.radio.e_tx; });
    real("radio.e_rx", [](SimConfig& c) -> double& { return c.radio.e_rx; });
    real("radio.e_da", [](SimConfig& c) -> double& { return c.radio.e_da; });
    real("radio.eps1", [](SimConfig& c) -> double& { return c.radio.eps_free_space; });
    real("radio.eps2", [](SimConfig& c) -> double& { return c.radio.eps_two_ray; });
    real("analysis.d1", [](SimConfig& c) -> double& { return c.analysis_d_bs; });
    t.emplace_back("leach.p_head", [](SimConfig& c, std::string_view k, std::string_view v, std::size_t l) {
      c.leach_p_head = parse_num<double>(k, v, l);
    });
    real("eecr.c1", [](SimConfig& c) -> double& { return c.eecr_c1; });
    real("eecr.c2", [](SimConfig& c) -> double& { return c.eecr_c2; });
    real("eecr.c3", [](SimConfig& c) -> double& { return c.eecr_c3; });
    t.emplace_back("plot.per_seed", [](SimConfig& c, std::string_view k, std::string_view v, std::size_t l) {
      c.plot_per_seed = parse_bool(k, v, l);
    });
    return t;
  }();
  return table;
}

void require(bool ok, const char* key, const std::string& constraint) {
  if (!ok) throw ConfigError(std::string(key) + " " + constraint, key);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, setter] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value, std::size_t line) {
  for (const auto& [name, setter] : setters()) {
    if (name == key) {
      setter(cfg, key, value, line);
      return;
    }
  }
  std::string msg;
  if (line) msg += "line " + std::to_string(line) + ": ";
  throw ConfigError(msg + "unknown key '" + std::string(key) + "'", std::string(key), line);
}

void SimConfig::validate() const {
  auto finite_pos = [](double v) { return std::isfinite(v) && v > 0.0; };
  require(n_nodes >= 1, "n_nodes", "must be >= 1");
  require(finite_pos(side_m), "side_m", "must be > 0");
  const Point2D bs = base_station();
  require(std::isfinite(bs.x), "bs_x", "must be finite");
  require(std::isfinite(bs.y), "bs_y", "must be finite");
  require(finite_pos(initial_energy_j), "initial_energy_j", "must be > 0");
  require(message_bytes >= 1, "message_bytes", "must be >= 1");
  require(control_bits >= 0, "control_bits", "must be >= 0");
  require(finite_pos(radio_range_m), "radio_range_m", "must be > 0");
  if (threshold_m) require(std::isfinite(*threshold_m) && *threshold_m >= 0.0, "threshold_m", "must be >= 0");
  if (target_clusters) require(*target_clusters >= 1, "target_clusters", "must be >= 1");
  require(reelect_period >= 0, "reelect_period", "must be >= 0");
  require(std::isfinite(rotation.floor_fraction) && rotation.floor_fraction >= 0.0 && rotation.floor_fraction <= 1.0,
          "rotation.floor_fraction", "must lie in [0, 1]");
  require(max_rounds >= 0, "max_rounds", "must be >= 0");
  require(!seeds.empty(), "seeds", "must list at least one seed");
  require(!algorithms.empty(), "algorithm", "must name an algorithm");
  require(finite_pos(radio.e_tx), "radio.e_tx", "must be > 0");
  require(finite_pos(radio.e_rx), "radio.e_rx", "must be > 0");
  require(finite_pos(radio.e_da), "radio.e_da", "must be > 0");
  require(finite_pos(radio.eps_free_space), "radio.eps1", "must be > 0");
  require(finite_pos(radio.eps_two_ray), "radio.eps2", "must be > 0");
  require(finite_pos(analysis_d_bs), "analysis.d1", "must be > 0");
  if (leach_p_head) {
    require(*leach_p_head > 0.0 && *leach_p_head <= 1.0, "leach.p_head", "must lie in (0, 1]");
  } else {
    try {
      (void)head_probability();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("leach.p_head unset and analytic cluster count undefined: ") + e.what(),
                        "analysis.d1");
    }
  }
  if (threshold_mode == ThresholdMode::sweep && !target_clusters) {
    try {
      (void)sweep_target();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("target_clusters unset and analytic cluster count undefined: ") + e.what(),
                        "analysis.d1");
    }
  }
}

SimConfig parse_config(std::string_view text) {
  SimConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header", {}, line_no);
      }
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ", column 1: expected 'key = value'", {}, line_no);
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ", column 1: missing key", {}, line_no);
    }
    if (value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ", column " + std::to_string(eq + 2) +
                            ": missing value for " + key,
                        key, line_no);
    }
    if (!section.empty()) key = section + "." + key;
    apply_setting(cfg, key, value, line_no);
  }
  cfg.validate();
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace trajwsn
