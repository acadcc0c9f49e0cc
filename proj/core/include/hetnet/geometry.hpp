#pragma once

#include "hetnet/integrator.hpp"
#include "hetnet/presets.hpp"

#include <array>
#include <memory>
#include <vector>

namespace hetnet {

/// Polyline of one connection. Each connection lies in the coordinate plane
/// spanned by its two endpoint axes.
struct NetworkEdge {
  int from = 0;
  int to = 0;
  Polyline points;
  /// Cumulative arc length at each point.
  std::vector<double> arc;

  double length() const { return arc.empty() ? 0.0 : arc.back(); }
};

/// A network element used for coverage tests: an equilibrium or a bucket
/// point on one edge.
struct NetworkElement {
  enum class Kind { Equilibrium, EdgePoint } kind = Kind::Equilibrium;
  /// Equilibrium id, or index into edges().
  int owner = 0;
  Vector point;
};

class NetworkGeometry {
 public:
  NetworkGeometry() = default;

  int dimension() const { return dimension_; }
  const std::vector<Equilibrium>& equilibria() const { return equilibria_; }
  const std::vector<NetworkEdge>& edges() const { return edges_; }

  /// Euclidean distance to the union of equilibria and polylines.
  double distance(const Vector& x) const;

  /// The sub-network made of the listed edges and their endpoints.
  NetworkGeometry subset(const std::vector<Edge>& edges) const;

  double total_length() const;
  /// Point at arc length s along the concatenated edges, s in [0, total_length].
  Vector point_at(double s) const;

  /// Largest deviation of a stored vertex from the chord joining its
  /// neighbours: a bound on how far the polylines sit from the true orbits.
  double resolution() const { return resolution_; }

  /// Equilibria followed by points spaced `spacing` apart in arc length along
  /// every edge, excluding the endpoints.
  std::vector<NetworkElement> elements(double spacing) const;

 private:
  struct PlaneGrid;
  friend NetworkGeometry build_network_geometry(const NetworkModel&, const std::vector<Edge>&,
                                                double, double);

  double edge_distance2(std::size_t e, const Vector& x, double limit2) const;
  void add_edge(NetworkEdge edge);

  int dimension_ = 0;
  double resolution_ = 0.0;
  std::vector<Equilibrium> equilibria_;
  std::vector<NetworkEdge> edges_;
  std::vector<std::shared_ptr<const PlaneGrid>> grids_;
};

inline constexpr double kGeometrySpacing = 1e-3;

/// Builds the connection polylines for `edges` (signed axis ids).
/// Throws NoConnection naming the failing edge.
NetworkGeometry build_network_geometry(const NetworkModel& m, const std::vector<Edge>& edges,
                                       double seed_offset = 1e-6,
                                       double spacing = kGeometrySpacing);

double distance_to_network(const Vector& x, const NetworkGeometry& g);

/// y1 = sum_j x_j cos(2 pi j / 5), y2 = sum_j x_j sin(2 pi j / 5), j = 1..5.
std::array<double, 2> pentacle_project(const Vector& x);

}  // namespace hetnet
