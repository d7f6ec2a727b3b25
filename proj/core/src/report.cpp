#include "trajwsn/report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace trajwsn {

RunSummary summarize(std::span<const RoundMetrics> rounds, std::int64_t n_nodes) {
  RunSummary s;
  bool first_seen = false;
  for (const auto& r : rounds) {
    if (!first_seen && r.alive_count < n_nodes) {
      s.first_death_round = r.round - 1;
      first_seen = true;
    }
    if (r.alive_count > 0) s.last_death_round = r.round;
    s.total_energy_j += r.energy_spent_this_round;
  }
  if (!first_seen) s.first_death_round = rounds.empty() ? 0 : rounds.back().round;
  if (!rounds.empty()) s.total_packets = rounds.back().packets_delivered_total;
  return s;
}

std::vector<RunResult> run_scenario(const SimConfig& config, unsigned threads) {
  config.validate();
  std::vector<RunResult> results;
  for (const Algorithm a : config.algorithms) {
    for (const std::uint64_t seed : config.seeds) results.push_back(RunResult{a, seed, {}, {}, std::nullopt});
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < results.size(); i = next++) {
      RunResult& r = results[i];
      try {
        r.rounds = run_simulation(config, r.algorithm, r.seed);
        r.summary = summarize(r.rounds, config.n_nodes);
      } catch (const std::exception& e) {
        r.rounds.clear();
        r.error = std::string(to_string(r.algorithm)) + " seed " + std::to_string(r.seed) + ": " + e.what();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(results.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return results;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("cannot format double");
  return std::string(buf, ptr);
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory '" + dir.string() + "'");
  }
}

}  // namespace

void write_csv(std::span<const RunResult> results, const std::filesystem::path& out_dir) {
  if (results.empty()) throw std::invalid_argument("no results to write");
  ensure_dir(out_dir);

  auto rounds = open_output(out_dir / "rounds.csv");
  rounds << kRoundsHeader << '\n';
  for (const auto& r : results) {
    const auto alg = to_string(r.algorithm);
    for (const auto& m : r.rounds) {
      rounds << alg << ',' << r.seed << ',' << m.round << ',' << m.alive_count << ',' << m.packets_delivered_total
             << ',' << format_double(m.energy_spent_this_round) << ',' << format_double(m.residual_energy_total)
             << ',' << m.head_rotations << ',' << m.reclusterings << '\n';
    }
  }

  auto summary = open_output(out_dir / "summary.csv");
  summary << kSummaryHeader << '\n';
  for (const auto& r : results) {
    if (r.error) continue;
    summary << to_string(r.algorithm) << ',' << r.seed << ',' << r.summary.first_death_round << ','
            << r.summary.last_death_round << ',' << r.summary.total_packets << ','
            << format_double(r.summary.total_energy_j) << '\n';
  }

  if (!rounds || !summary) throw std::runtime_error("failed writing csv output to '" + out_dir.string() + "'");
}

}  // namespace trajwsn
