#include "hetnet/error.hpp"
#include "hetnet/geometry.hpp"
#include "hetnet/visibility.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace hetnet;

namespace {

const NetworkGeometry& ks_geometry() {
  static const NetworkGeometry g = build_network_geometry(make_ks_model(ks_table_params('a')), ks_edges());
  return g;
}

/// Exhaustive distance over every stored segment.
double brute_distance(const NetworkGeometry& g, const Vector& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& eq : g.equilibria()) best = std::min(best, (x - eq.coordinates).norm());
  for (const auto& e : g.edges()) {
    for (std::size_t k = 0; k + 1 < e.points.size(); ++k) {
      const Vector d = e.points[k + 1] - e.points[k];
      const double len2 = d.squaredNorm();
      double t = len2 > 0.0 ? (x - e.points[k]).dot(d) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      best = std::min(best, (x - e.points[k] - t * d).norm());
    }
  }
  return best;
}

}  // namespace

TEST_CASE("distance matches an exhaustive search") {
  const auto& g = ks_geometry();
  Rng rng(42);
  for (int k = 0; k < 300; ++k) {
    Vector x(4);
    for (int j = 0; j < 4; ++j) x(j) = rng.uniform() * (k % 3 == 0 ? 1.2 : 0.3);
    CHECK(std::abs(g.distance(x) - brute_distance(g, x)) < 1e-14);
  }
}

TEST_CASE("distance is zero on the network and 1-Lipschitz") {
  const auto& g = ks_geometry();
  for (const auto& eq : g.equilibria()) CHECK(g.distance(eq.coordinates) == 0.0);
  for (const auto& e : g.edges()) CHECK(g.distance(e.points[e.points.size() / 2]) < 1e-15);
  Rng rng(7);
  for (int k = 0; k < 300; ++k) {
    Vector x(4), y(4);
    for (int j = 0; j < 4; ++j) {
      x(j) = rng.uniform();
      y(j) = x(j) + 0.05 * (rng.uniform() - 0.5);
    }
    CHECK(std::abs(g.distance(x) - g.distance(y)) <= (x - y).norm() + 1e-15);
  }
}

TEST_CASE("subset keeps the named edges and their endpoints") {
  const auto& g = ks_geometry();
  const auto sub = g.subset({{1, 2}, {2, 4}, {4, 1}});
  CHECK(sub.edges().size() == 3);
  CHECK(sub.equilibria().size() == 3);
  Vector xi3 = Vector::Zero(4);
  xi3(2) = 1.0;
  CHECK(g.distance(xi3) == 0.0);
  CHECK(sub.distance(xi3) > 0.5);
  try {
    g.subset({{1, 3}});
    FAIL("expected UnknownTarget");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownTarget);
  }
}

TEST_CASE("polyline resolution is fine") {
  CHECK(ks_geometry().resolution() < 1e-5);
  CHECK(ks_geometry().resolution() > 0.0);
}

TEST_CASE("elements cover every edge at the requested spacing") {
  const auto& g = ks_geometry();
  const auto el = g.elements(0.025);
  std::size_t eq = 0;
  for (const auto& e : el) eq += e.kind == NetworkElement::Kind::Equilibrium;
  CHECK(eq == 4);
  for (const auto& e : el) CHECK(g.distance(e.point) < 1e-12);
  CHECK(el.size() - eq >= static_cast<std::size_t>(g.total_length() / 0.025) - 2 * g.edges().size());
}

TEST_CASE("pentacle projection is linear") {
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    Vector x(5), y(5);
    for (int j = 0; j < 5; ++j) x(j) = rng.normal(), y(j) = rng.normal();
    const double a = rng.normal(), b = rng.normal();
    const auto pz = pentacle_project(a * x + b * y);
    const auto px = pentacle_project(x), py = pentacle_project(y);
    CHECK(std::abs(pz[0] - (a * px[0] + b * py[0])) < 1e-12);
    CHECK(std::abs(pz[1] - (a * px[1] + b * py[1])) < 1e-12);
  }
}

TEST_CASE("cyclic shift rotates the pentacle by 2 pi / 5") {
  const double c = std::cos(2.0 * std::numbers::pi / 5.0), s = std::sin(2.0 * std::numbers::pi / 5.0);
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    Vector x(5);
    for (int j = 0; j < 5; ++j) x(j) = rng.uniform();
    Vector sx(5);
    for (int j = 0; j < 5; ++j) sx((j + 1) % 5) = x(j);
    const auto p = pentacle_project(x);
    const auto q = pentacle_project(sx);
    CHECK(std::abs(q[0] - (c * p[0] - s * p[1])) < 1e-12);
    CHECK(std::abs(q[1] - (s * p[0] + c * p[1])) < 1e-12);
  }
  // Axis equilibria land on the unit pentagon.
  for (int j = 1; j <= 5; ++j) {
    const auto p = pentacle_project(axis_equilibrium(5, j).coordinates);
    CHECK(std::abs(std::hypot(p[0], p[1]) - 1.0) < 1e-14);
  }
  try {
    pentacle_project(Vector::Zero(4));
    FAIL("expected WrongDimension");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongDimension);
  }
}

TEST_CASE("distance_to_network checks the dimension") {
  try {
    distance_to_network(Vector::Zero(3), ks_geometry());
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}
