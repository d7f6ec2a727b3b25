#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "trajwsn/report.hpp"

namespace trajwsn {

namespace {

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

double metric_value(const RoundMetrics& m, PlotMetric metric) {
  return metric == PlotMetric::alive ? static_cast<double>(m.alive_count)
                                     : static_cast<double>(m.packets_delivered_total);
}

std::string fixed(double v, int precision = 3) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("0");
}

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// 1, 2 or 5 times a power of ten, giving roughly `target` ticks.
double nice_step(double span, int target) {
  if (span <= 0.0) return 1.0;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  return (frac <= 1.0 ? 1.0 : frac <= 2.0 ? 2.0 : frac <= 5.0 ? 5.0 : 10.0) * mag;
}

void polyline(std::ostringstream& svg, const PlotFrame& f, const Curve& c, const char* colour, double width,
              double opacity) {
  svg << "  <polyline class=\"series\" data-label=\"" << escape(c.label) << "\" fill=\"none\" stroke=\"" << colour
      << "\" stroke-width=\"" << fixed(width, 1) << "\" stroke-opacity=\"" << fixed(opacity, 2) << "\" points=\"";
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    if (i) svg << ' ';
    svg << fixed(f.to_x(c.points[i].round)) << ',' << fixed(f.to_y(c.points[i].value));
  }
  svg << "\"/>\n";
}

}  // namespace

double PlotFrame::to_x(double round) const {
  return left + (round - x_min) / (x_max - x_min) * (width - left - right);
}

double PlotFrame::to_y(double value) const {
  return height - bottom - (value - y_min) / (y_max - y_min) * (height - top - bottom);
}

std::vector<Curve> seed_averaged_curves(std::span<const RunResult> results, PlotMetric metric) {
  std::vector<Algorithm> order;
  for (const auto& r : results) {
    if (!r.error && std::find(order.begin(), order.end(), r.algorithm) == order.end()) order.push_back(r.algorithm);
  }

  std::vector<Curve> curves;
  for (const Algorithm a : order) {
    std::vector<const RunResult*> runs;
    std::size_t length = 0;
    for (const auto& r : results) {
      if (r.error || r.algorithm != a) continue;
      runs.push_back(&r);
      length = std::max(length, r.rounds.size());
    }
    Curve c{std::string(to_string(a)), {}};
    c.points.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
      double sum = 0.0;
      for (const RunResult* r : runs) {
        if (r->rounds.empty()) continue;
        sum += metric_value(r->rounds[std::min(i, r->rounds.size() - 1)], metric);
      }
      c.points.push_back({static_cast<double>(i + 1), sum / static_cast<double>(runs.size())});
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

std::string render_svg(std::span<const Curve> curves, const std::string& title, const std::string& y_label,
                       std::span<const Curve> faint) {
  PlotFrame f;
  double x_max = 1.0;
  double y_max = 0.0;
  for (const auto* set : {&curves, &faint}) {
    for (const auto& c : *set) {
      for (const auto& p : c.points) {
        x_max = std::max(x_max, p.round);
        y_max = std::max(y_max, p.value);
      }
    }
  }
  f.x_max = x_max;
  f.y_max = y_max > 0.0 ? y_max * 1.05 : 1.0;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(f.width, 0) << "\" height=\""
      << fixed(f.height, 0) << "\" viewBox=\"0 0 " << fixed(f.width, 0) << ' ' << fixed(f.height, 0)
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "  <text x=\"" << fixed(f.width / 2.0, 1) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(title) << "</text>\n";

  const double x0 = f.to_x(f.x_min), x1 = f.to_x(f.x_max);
  const double y0 = f.to_y(f.y_min), y1 = f.to_y(f.y_max);
  svg << "  <g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
      << "    <line x1=\"" << fixed(x0) << "\" y1=\"" << fixed(y0) << "\" x2=\"" << fixed(x1) << "\" y2=\"" << fixed(y0)
      << "\"/>\n"
      << "    <line x1=\"" << fixed(x0) << "\" y1=\"" << fixed(y0) << "\" x2=\"" << fixed(x0) << "\" y2=\"" << fixed(y1)
      << "\"/>\n"
      << "  </g>\n";

  svg << "  <g class=\"ticks\">\n";
  const double xs = nice_step(f.x_max - f.x_min, 8);
  for (double t = 0.0; t <= f.x_max + 1e-9; t += xs) {
    const double x = f.to_x(t);
    svg << "    <line x1=\"" << fixed(x) << "\" y1=\"" << fixed(y0) << "\" x2=\"" << fixed(x) << "\" y2=\""
        << fixed(y0 + 5) << "\" stroke=\"black\"/>\n"
        << "    <text x=\"" << fixed(x) << "\" y=\"" << fixed(y0 + 18) << "\" text-anchor=\"middle\">"
        << fixed(t, xs < 1.0 ? 2 : 0) << "</text>\n";
  }
  const double ys = nice_step(f.y_max - f.y_min, 6);
  for (double t = 0.0; t <= f.y_max + 1e-9; t += ys) {
    const double y = f.to_y(t);
    svg << "    <line x1=\"" << fixed(x0 - 5) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(x0) << "\" y2=\""
        << fixed(y) << "\" stroke=\"black\"/>\n"
        << "    <text x=\"" << fixed(x0 - 8) << "\" y=\"" << fixed(y + 4) << "\" text-anchor=\"end\">"
        << fixed(t, ys < 1.0 ? 2 : 0) << "</text>\n";
  }
  svg << "  </g>\n";
  svg << "  <text x=\"" << fixed((x0 + x1) / 2.0, 1) << "\" y=\"" << fixed(f.height - 12, 1)
      << "\" text-anchor=\"middle\">Round</text>\n"
      << "  <text x=\"18\" y=\"" << fixed((y0 + y1) / 2.0, 1) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << fixed((y0 + y1) / 2.0, 1) << ")\">" << escape(y_label) << "</text>\n";

  for (std::size_t i = 0; i < faint.size(); ++i) {
    // Faint curves carry "<algorithm> seed <n>"; colour by algorithm.
    std::size_t colour = 0;
    for (std::size_t j = 0; j < curves.size(); ++j) {
      if (faint[i].label.rfind(curves[j].label, 0) == 0) colour = j;
    }
    polyline(svg, f, faint[i], kPalette[colour % kPalette.size()], 0.6, 0.25);
  }
  for (std::size_t i = 0; i < curves.size(); ++i) polyline(svg, f, curves[i], kPalette[i % kPalette.size()], 2.0, 1.0);

  svg << "  <g class=\"legend\">\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const double y = f.top + 10.0 + 20.0 * static_cast<double>(i);
    const double x = f.width - f.right + 15.0;
    svg << "    <line x1=\"" << fixed(x) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(x + 25) << "\" y2=\""
        << fixed(y) << "\" stroke=\"" << kPalette[i % kPalette.size()] << "\" stroke-width=\"2\"/>\n"
        << "    <text x=\"" << fixed(x + 32) << "\" y=\"" << fixed(y + 4) << "\">" << escape(curves[i].label)
        << "</text>\n";
  }
  svg << "  </g>\n</svg>\n";
  return svg.str();
}

void emit_plots(std::span<const RunResult> results, const std::filesystem::path& out_dir, bool per_seed) {
  if (results.empty()) throw std::invalid_argument("no results to plot");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw std::runtime_error("cannot create output directory '" + out_dir.string() + "'");
  }

  struct Spec {
    PlotMetric metric;
    const char* file;
    const char* title;
    const char* y_label;
  };
  constexpr std::array<Spec, 2> specs{{
      {PlotMetric::alive, "alive_nodes.svg", "Number of nodes alive", "Alive nodes"},
      {PlotMetric::packets, "packets_delivered.svg", "Packets delivered to the base station", "Packets (cumulative)"},
  }};

  for (const auto& s : specs) {
    const auto curves = seed_averaged_curves(results, s.metric);
    std::vector<Curve> faint;
    if (per_seed) {
      for (const auto& r : results) {
        if (r.error) continue;
        Curve c{std::string(to_string(r.algorithm)) + " seed " + std::to_string(r.seed), {}};
        for (const auto& m : r.rounds) c.points.push_back({static_cast<double>(m.round), metric_value(m, s.metric)});
        faint.push_back(std::move(c));
      }
    }
    std::ofstream out(out_dir / s.file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + (out_dir / s.file).string() + "'");
    out << render_svg(curves, s.title, s.y_label, faint);
    if (!out) throw std::runtime_error("failed writing '" + (out_dir / s.file).string() + "'");
  }
}

}  // namespace trajwsn
