#include "trajwsn/trajectory.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace trajwsn {

double euclidean(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

DissimilarityMatrix::DissimilarityMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

DissimilarityMatrix DissimilarityMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  DissimilarityMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw DomainError("dissimilarity matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const double v = rows[i][j];
      if (!std::isfinite(v) || v < 0.0) throw DomainError("dissimilarity entries must be finite and >= 0");
      if (i == j && v != 0.0) throw DomainError("dissimilarity diagonal must be zero");
      if (v != rows[j][i]) throw DomainError("dissimilarity matrix must be symmetric");
      m.values_[i * m.n_ + j] = v;
    }
  }
  return m;
}

void DissimilarityMatrix::set(std::size_t i, std::size_t j, double v) {
  values_[i * n_ + j] = v;
  values_[j * n_ + i] = v;
}

double DissimilarityMatrix::max_entry() const {
  if (values_.empty()) return 0.0;
  return *std::max_element(values_.begin(), values_.end());
}

double point_to_trajectory_distance(Point2D p, const Trajectory& t) {
  if (t.points.empty()) throw DomainError("trajectory " + std::to_string(t.tid) + " is empty");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : t.points) best = std::min(best, euclidean(p, q));
  return best;
}

double one_way_distance(const Trajectory& from, const Trajectory& to) {
  if (from.points.empty()) throw DomainError("trajectory " + std::to_string(from.tid) + " is empty");
  double sum = 0.0;
  for (const auto& p : from.points) sum += point_to_trajectory_distance(p, to);
  return sum / static_cast<double>(from.points.size());
}

double trajectory_distance(const Trajectory& a, const Trajectory& b) {
  return std::max(one_way_distance(a, b), one_way_distance(b, a));
}

DissimilarityMatrix build_dissimilarity_matrix(std::span<const Trajectory> ts) {
  if (ts.empty()) throw DomainError("cannot build a dissimilarity matrix from zero trajectories");
  for (const auto& t : ts) {
    if (t.points.empty()) throw DomainError("trajectory " + std::to_string(t.tid) + " is empty");
  }
  DissimilarityMatrix m(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i + 1; j < ts.size(); ++j) m.set(i, j, trajectory_distance(ts[i], ts[j]));
  }
  return m;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
  }
  return out;
}

template <typename T>
T parse_number(const std::string& s, std::size_t line_no) {
  T value{};
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": cannot parse '" + s + "'");
  }
  return value;
}

}  // namespace

std::vector<Trajectory> read_trajectory_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw std::runtime_error("trajectory csv: missing header");
  ++line_no;
  if (split_csv_line(line) != std::vector<std::string>{"tid", "seq", "x", "y"}) {
    throw std::runtime_error("trajectory csv: header must be 'tid,seq,x,y'");
  }

  std::map<int, std::map<long, Point2D>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 4) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected 4 fields");
    }
    const int tid = parse_number<int>(f[0], line_no);
    const long seq = parse_number<long>(f[1], line_no);
    const Point2D p{parse_number<double>(f[2], line_no), parse_number<double>(f[3], line_no)};
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": non-finite coordinate");
    }
    if (!rows[tid].emplace(seq, p).second) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": duplicate (tid, seq)");
    }
  }

  std::vector<Trajectory> out;
  out.reserve(rows.size());
  for (auto& [tid, pts] : rows) {
    Trajectory t{tid, {}};
    t.points.reserve(pts.size());
    for (auto& [seq, p] : pts) t.points.push_back(p);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Trajectory> read_trajectory_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trajectory file '" + path + "'");
  return read_trajectory_csv(in);
}

}  // namespace trajwsn
