#include "svg.hpp"

#include "hetnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace hetnet::cli {

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 70, kRight = 20, kTop = 30, kBottom = 50;
constexpr double kLogFloor = 1e-16;
constexpr std::size_t kMaxPoints = 5000;

const char* const kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f"};

std::string f3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

void header(std::ostringstream& out, const PlotStamp& stamp, const std::string& title) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<metadata>scenario=" << escape(stamp.scenario_hash) << " seed=" << escape(stamp.seed)
      << " source=" << escape(stamp.source) << "</metadata>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">"
      << escape(title) << "</text>\n";
  out << "<text x=\"" << kWidth - kRight << "\" y=\"20\" font-family=\"monospace\" font-size=\"10\" "
      << "text-anchor=\"end\" fill=\"#555\">scenario " << escape(stamp.scenario_hash) << " seed "
      << escape(stamp.seed) << "</text>\n";
}

void axes(std::ostringstream& out, const Frame& f, const std::string& xlabel,
          const std::vector<std::pair<double, std::string>>& yticks) {
  const double bx = f.px(f.x0), ex = f.px(f.x1), by = f.py(f.y0), ey = f.py(f.y1);
  out << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  out << "<rect x=\"" << f3(bx) << "\" y=\"" << f3(ey) << "\" width=\"" << f3(ex - bx)
      << "\" height=\"" << f3(by - ey) << "\"/>\n";
  out << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = 0; k <= 5; ++k) {
    const double x = f.x0 + (f.x1 - f.x0) * k / 5.0;
    out << "<line x1=\"" << f3(f.px(x)) << "\" y1=\"" << f3(by) << "\" x2=\"" << f3(f.px(x))
        << "\" y2=\"" << f3(by + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << f3(f.px(x)) << "\" y=\"" << f3(by + 18)
        << "\" text-anchor=\"middle\">" << label(x) << "</text>\n";
  }
  for (const auto& [y, text] : yticks) {
    out << "<line x1=\"" << f3(bx - 5) << "\" y1=\"" << f3(f.py(y)) << "\" x2=\"" << f3(bx)
        << "\" y2=\"" << f3(f.py(y)) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << f3(bx - 8) << "\" y=\"" << f3(f.py(y) + 4)
        << "\" text-anchor=\"end\">" << escape(text) << "</text>\n";
  }
  out << "<text x=\"" << f3((bx + ex) / 2) << "\" y=\"" << f3(kHeight - 10)
      << "\" text-anchor=\"middle\">" << escape(xlabel) << "</text>\n</g>\n";
}

}  // namespace

std::string timeseries_svg(const Table& traj, bool log_scale, const PlotStamp& stamp) {
  const std::size_t tc = traj.column("t");
  if (traj.rows.size() < 2) throw Error(ErrorCode::ParseError, "trajectory table has fewer than two rows");
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < traj.columns.size(); ++c) {
    if (c != tc) cols.push_back(c);
  }
  auto map_y = [&](double v) { return log_scale ? std::log10(std::max(std::abs(v), kLogFloor)) : v; };

  Frame f{traj.rows.front()[tc], traj.rows.back()[tc], 0.0, 1.0};
  if (!(f.x1 > f.x0)) f.x1 = f.x0 + 1.0;
  if (log_scale) {
    double lo = 0.0;
    for (const auto& r : traj.rows) {
      for (auto c : cols) lo = std::min(lo, map_y(r[c]));
    }
    f.y0 = std::floor(lo);
    f.y1 = 0.0;
    if (f.y0 >= f.y1) f.y0 = f.y1 - 1.0;
  } else {
    double hi = 0.0, lo = 0.0;
    for (const auto& r : traj.rows) {
      for (auto c : cols) hi = std::max(hi, r[c]), lo = std::min(lo, r[c]);
    }
    f.y0 = lo;
    f.y1 = hi > lo ? hi : lo + 1.0;
  }

  std::vector<std::pair<double, std::string>> yticks;
  if (log_scale) {
    const int step = std::max(1, static_cast<int>(std::ceil((f.y1 - f.y0) / 8.0)));
    for (int e = 0; e >= static_cast<int>(f.y0); e -= step) yticks.push_back({e, "1e" + std::to_string(e)});
  } else {
    for (int k = 0; k <= 5; ++k) {
      const double y = f.y0 + (f.y1 - f.y0) * k / 5.0;
      yticks.push_back({y, label(y)});
    }
  }

  std::ostringstream out;
  header(out, stamp, std::string("time series (") + (log_scale ? "log" : "linear") + " ordinate)");
  axes(out, f, "t", yticks);
  const std::size_t stride = std::max<std::size_t>(1, traj.rows.size() / kMaxPoints);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const auto c = cols[k];
    out << "<polyline fill=\"none\" stroke-width=\"1.2\" stroke=\"" << kColours[k % 8] << "\" points=\"";
    for (std::size_t r = 0; r < traj.rows.size(); r += stride) {
      out << f3(f.px(traj.rows[r][tc])) << ',' << f3(f.py(map_y(traj.rows[r][c]))) << ' ';
    }
    const auto& last = traj.rows.back();
    out << f3(f.px(last[tc])) << ',' << f3(f.py(map_y(last[c]))) << "\"/>\n";
    out << "<text x=\"" << f3(kWidth - kRight - 40) << "\" y=\"" << f3(kTop + 16 + 14.0 * k)
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << kColours[k % 8] << "\">"
        << escape(traj.columns[c]) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string pentacle_svg(const Table& pentacle, const PlotStamp& stamp) {
  const std::size_t c1 = pentacle.column("y1"), c2 = pentacle.column("y2");
  if (pentacle.rows.empty()) throw Error(ErrorCode::ParseError, "pentacle table is empty");
  Frame f{-1.15, 1.15, -1.15, 1.15};
  std::ostringstream out;
  header(out, stamp, "pentacle projection");
  // Keep the aspect ratio square inside the plotting area.
  const double side = std::min(kWidth - kLeft - kRight, kHeight - kTop - kBottom);
  const double ox = kLeft + (kWidth - kLeft - kRight - side) / 2, oy = kTop;
  auto px = [&](double y) { return ox + (y - f.x0) / (f.x1 - f.x0) * side; };
  auto py = [&](double y) { return oy + side - (y - f.y0) / (f.y1 - f.y0) * side; };

  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int j = 1; j <= 5; ++j) {
    const double a = 2.0 * std::numbers::pi * j / 5.0;
    out << "<circle cx=\"" << f3(px(std::cos(a))) << "\" cy=\"" << f3(py(std::sin(a)))
        << "\" r=\"4\" fill=\"black\"/>\n";
    out << "<text x=\"" << f3(px(1.08 * std::cos(a))) << "\" y=\"" << f3(py(1.08 * std::sin(a)) + 4)
        << "\" text-anchor=\"middle\">xi" << j << "</text>\n";
  }
  out << "</g>\n";
  const std::size_t stride = std::max<std::size_t>(1, pentacle.rows.size() / kMaxPoints);
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"0.8\" points=\"";
  for (std::size_t r = 0; r < pentacle.rows.size(); r += stride) {
    out << f3(px(pentacle.rows[r][c1])) << ',' << f3(py(pentacle.rows[r][c2])) << ' ';
  }
  out << f3(px(pentacle.rows.back()[c1])) << ',' << f3(py(pentacle.rows.back()[c2])) << "\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace hetnet::cli
