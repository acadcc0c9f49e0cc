#include "hetnet/geometry.hpp"

#include "hetnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hetnet {

namespace {

constexpr std::size_t kChunk = 64;

struct P2 {
  double x, y;
};

double segment_distance2(const P2& q, const P2& a, const P2& b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((q.x - a.x) * dx + (q.y - a.y) * dy) / len2 : 0.0;
  P2 p;
  if (t <= 0.0) {
    p = a;
  } else if (t >= 1.0) {
    p = b;
  } else {
    p = {a.x + t * dx, a.y + t * dy};
  }
  const double ex = q.x - p.x, ey = q.y - p.y;
  return ex * ex + ey * ey;
}

std::string edge_name(const Edge& e) {
  return std::to_string(e.first) + "->" + std::to_string(e.second);
}

}  // namespace

/// One planar polyline split into runs of kChunk segments, each with a
/// bounding circle, so a query only scans runs that could beat the bound.
struct NetworkGeometry::PlaneGrid {
  int i = 0, j = 0;
  std::vector<P2> pts;
  struct Chunk {
    P2 centre;
    double radius;
    std::size_t first, last;  // segment range [first, last)
  };
  std::vector<Chunk> chunks;

  void build(const Polyline& line, int axis_i, int axis_j) {
    i = axis_i;
    j = axis_j;
    pts.clear();
    for (const auto& p : line) pts.push_back({p(i), p(j)});
    chunks.clear();
    const std::size_t segs = pts.size() > 1 ? pts.size() - 1 : 1;
    for (std::size_t first = 0; first < segs; first += kChunk) {
      const std::size_t last = std::min(segs, first + kChunk);
      const std::size_t end = std::min(pts.size() - 1, last);
      P2 c{0.0, 0.0};
      for (std::size_t k = first; k <= end; ++k) c.x += pts[k].x, c.y += pts[k].y;
      const double n = static_cast<double>(end - first + 1);
      c.x /= n;
      c.y /= n;
      double r2 = 0.0;
      for (std::size_t k = first; k <= end; ++k) {
        r2 = std::max(r2, (pts[k].x - c.x) * (pts[k].x - c.x) + (pts[k].y - c.y) * (pts[k].y - c.y));
      }
      chunks.push_back({c, std::sqrt(r2), first, last});
    }
  }

  double scan(const P2& q, const Chunk& c, double best2) const {
    if (pts.size() == 1) return std::min(best2, segment_distance2(q, pts[0], pts[0]));
    for (std::size_t k = c.first; k < c.last; ++k) best2 = std::min(best2, segment_distance2(q, pts[k], pts[k + 1]));
    return best2;
  }

  /// Squared distance to the polyline, or a value >= best2 when farther.
  double query(const P2& q, double best2) const {
    thread_local std::vector<double> lower;
    lower.resize(chunks.size());
    std::size_t nearest = 0;
    for (std::size_t k = 0; k < chunks.size(); ++k) {
      const auto& c = chunks[k];
      const double d = std::hypot(q.x - c.centre.x, q.y - c.centre.y) - c.radius;
      lower[k] = d > 0.0 ? d * d : 0.0;
      if (lower[k] < lower[nearest]) nearest = k;
    }
    if (lower[nearest] >= best2) return best2;
    best2 = scan(q, chunks[nearest], best2);
    for (std::size_t k = 0; k < chunks.size(); ++k) {
      if (k != nearest && lower[k] < best2) best2 = scan(q, chunks[k], best2);
    }
    return best2;
  }
};

double NetworkGeometry::edge_distance2(std::size_t e, const Vector& x, double limit2) const {
  const auto& grid = *grids_[e];
  double off2 = 0.0;
  for (int k = 0; k < dimension_; ++k) {
    if (k != grid.i && k != grid.j) off2 += x(k) * x(k);
  }
  if (off2 >= limit2) return limit2;
  const double in2 = grid.query({x(grid.i), x(grid.j)}, limit2 - off2);
  return std::min(limit2, off2 + in2);
}

double NetworkGeometry::distance(const Vector& x) const {
  double best2 = std::numeric_limits<double>::infinity();
  for (const auto& eq : equilibria_) best2 = std::min(best2, (x - eq.coordinates).squaredNorm());
  // Nearest planes first so the bound tightens early.
  constexpr std::size_t kMaxSorted = 32;
  if (edges_.size() <= kMaxSorted) {
    std::array<std::pair<double, std::size_t>, kMaxSorted> order;
    const double total2 = x.squaredNorm();
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto& grid = *grids_[e];
      order[e] = {total2 - x(grid.i) * x(grid.i) - x(grid.j) * x(grid.j), e};
    }
    std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(edges_.size()));
    for (std::size_t k = 0; k < edges_.size(); ++k) best2 = edge_distance2(order[k].second, x, best2);
  } else {
    for (std::size_t e = 0; e < edges_.size(); ++e) best2 = edge_distance2(e, x, best2);
  }
  return std::sqrt(best2);
}

void NetworkGeometry::add_edge(NetworkEdge edge) {
  const int i = std::abs(edge.from) - 1;
  const int j = std::abs(edge.to) - 1;
  auto grid = std::make_shared<PlaneGrid>();
  grid->build(edge.points, i, j);
  for (std::size_t k = 1; k + 1 < grid->pts.size(); ++k) {
    resolution_ = std::max(resolution_, std::sqrt(segment_distance2(grid->pts[k], grid->pts[k - 1],
                                                                     grid->pts[k + 1])));
  }
  edges_.push_back(std::move(edge));
  grids_.push_back(std::move(grid));
}

NetworkGeometry NetworkGeometry::subset(const std::vector<Edge>& wanted) const {
  NetworkGeometry out;
  out.dimension_ = dimension_;
  out.resolution_ = resolution_;
  auto add_eq = [&](int id) {
    for (const auto& e : out.equilibria_) {
      if (e.id() == id) return;
    }
    for (const auto& e : equilibria_) {
      if (e.id() == id) {
        out.equilibria_.push_back(e);
        return;
      }
    }
  };
  for (const auto& w : wanted) {
    bool found = false;
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      if (edges_[k].from == w.first && edges_[k].to == w.second) {
        out.edges_.push_back(edges_[k]);
        out.grids_.push_back(grids_[k]);
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error(ErrorCode::UnknownTarget, "edge " + edge_name(w) + " is not part of the network");
    }
    add_eq(w.first);
    add_eq(w.second);
  }
  return out;
}

double NetworkGeometry::total_length() const {
  double s = 0.0;
  for (const auto& e : edges_) s += e.length();
  return s;
}

Vector NetworkGeometry::point_at(double s) const {
  if (edges_.empty()) {
    if (equilibria_.empty()) throw Error(ErrorCode::SamplingFailed, "empty geometry");
    return equilibria_.front().coordinates;
  }
  for (const auto& e : edges_) {
    if (s <= e.length() || &e == &edges_.back()) {
      s = std::clamp(s, 0.0, e.length());
      auto it = std::upper_bound(e.arc.begin(), e.arc.end(), s);
      if (it == e.arc.end()) return e.points.back();
      const auto k = static_cast<std::size_t>(it - e.arc.begin());
      if (k == 0) return e.points.front();
      const double seg = e.arc[k] - e.arc[k - 1];
      const double t = seg > 0.0 ? (s - e.arc[k - 1]) / seg : 0.0;
      return e.points[k - 1] + t * (e.points[k] - e.points[k - 1]);
    }
    s -= e.length();
  }
  return edges_.back().points.back();
}

std::vector<NetworkElement> NetworkGeometry::elements(double spacing) const {
  if (!(spacing > 0.0)) throw Error(ErrorCode::InvalidOptions, "element spacing must be positive");
  std::vector<NetworkElement> out;
  for (const auto& eq : equilibria_) {
    out.push_back({NetworkElement::Kind::Equilibrium, eq.id(), eq.coordinates});
  }
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& e = edges_[k];
    const int count = static_cast<int>(std::floor(e.length() / spacing));
    std::size_t seg = 1;
    for (int b = 1; b <= count; ++b) {
      const double s = b * spacing;
      if (e.length() - s < 0.5 * spacing) break;
      while (seg + 1 < e.arc.size() && e.arc[seg] < s) ++seg;
      const double len = e.arc[seg] - e.arc[seg - 1];
      const double t = len > 0.0 ? (s - e.arc[seg - 1]) / len : 0.0;
      Vector p = e.points[seg - 1] + std::clamp(t, 0.0, 1.0) * (e.points[seg] - e.points[seg - 1]);
      out.push_back({NetworkElement::Kind::EdgePoint, static_cast<int>(k), std::move(p)});
    }
  }
  return out;
}

NetworkGeometry build_network_geometry(const NetworkModel& m, const std::vector<Edge>& edges,
                                       double seed_offset, double spacing) {
  const int n = m.dimension();
  NetworkGeometry g;
  g.dimension_ = n;
  auto equilibrium = [&](int id) {
    if (id == 0 || std::abs(id) > n) {
      throw Error(ErrorCode::IndexOutOfRange, "equilibrium id " + std::to_string(id) +
                                                  " outside dimension " + std::to_string(n));
    }
    return axis_equilibrium(n, std::abs(id), id > 0 ? 1 : -1);
  };
  for (const auto& e : edges) {
    const auto from = equilibrium(e.first);
    const auto to = equilibrium(e.second);
    for (const auto* eq : {&from, &to}) {
      bool have = false;
      for (const auto& known : g.equilibria_) have |= known.id() == eq->id();
      if (!have) g.equilibria_.push_back(*eq);
    }
    Polyline line;
    try {
      line = connection_polyline(m, from, to, seed_offset, 2000.0, spacing);
    } catch (const Error& err) {
      throw Error(err.code(), "edge " + edge_name(e) + ": " + err.what());
    }
    NetworkEdge edge;
    edge.from = e.first;
    edge.to = e.second;
    const int i = std::abs(e.first) - 1, j = std::abs(e.second) - 1;
    for (auto& p : line) {
      for (int k = 0; k < n; ++k) {
        if (k != i && k != j) p(k) = 0.0;
      }
    }
    edge.points = std::move(line);
    edge.arc.resize(edge.points.size());
    edge.arc[0] = 0.0;
    for (std::size_t k = 1; k < edge.points.size(); ++k) {
      edge.arc[k] = edge.arc[k - 1] + (edge.points[k] - edge.points[k - 1]).norm();
    }
    g.add_edge(std::move(edge));
  }
  return g;
}

double distance_to_network(const Vector& x, const NetworkGeometry& g) {
  if (x.size() != g.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match the network");
  }
  return g.distance(x);
}

std::array<double, 2> pentacle_project(const Vector& x) {
  if (x.size() != 5) throw Error(ErrorCode::WrongDimension, "pentacle projection needs 5 coordinates");
  std::array<double, 2> y{0.0, 0.0};
  for (int j = 1; j <= 5; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / 5.0;
    y[0] += x(j - 1) * std::cos(angle);
    y[1] += x(j - 1) * std::sin(angle);
  }
  return y;
}

}  // namespace hetnet
