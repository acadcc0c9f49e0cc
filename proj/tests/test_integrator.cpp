#include "hetnet/error.hpp"
#include "hetnet/integrator.hpp"
#include "hetnet/presets.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace hetnet;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("Dormand-Prince: exponential decay oracle") {
  IntegratorOptions o;
  o.t_max = 5.0;
  o.rel_tol = 1e-10;
  o.abs_tol = 1e-14;
  const auto t = solve_ode([](double, const Vector& y, Vector& dy) { dy = -y; }, vec({1.0}), o);
  REQUIRE(t.termination == Termination::TimeLimit);
  CHECK(t.final_time() == 5.0);
  CHECK(std::abs(t.states.back()(0) - std::exp(-5.0)) < 1e-11);
}

TEST_CASE("Dormand-Prince: harmonic oscillator returns after one period") {
  IntegratorOptions o;
  o.t_max = 2.0 * std::numbers::pi;
  o.rel_tol = 1e-11;
  o.abs_tol = 1e-13;
  const auto t = solve_ode(
      [](double, const Vector& y, Vector& dy) {
        dy.resize(2);
        dy(0) = y(1);
        dy(1) = -y(0);
      },
      vec({1.0, 0.0}), o);
  CHECK(std::abs(t.states.back()(0) - 1.0) < 1e-9);
  CHECK(std::abs(t.states.back()(1)) < 1e-9);
}

TEST_CASE("Dormand-Prince: fifth-order convergence in the step") {
  // Steps capped by max_step under a tolerance loose enough that none is rejected.
  auto err_at = [](double h) {
    IntegratorOptions o;
    o.t_max = 1.0;
    o.rel_tol = 1e-3;
    o.abs_tol = 1e-3;
    o.max_step = h;
    const auto t = solve_ode([](double tt, const Vector&, Vector& dy) { dy = vec({std::cos(tt)}); },
                             vec({0.0}), o);
    return std::abs(t.states.back()(0) - std::sin(1.0));
  };
  const double e1 = err_at(0.1), e2 = err_at(0.05);
  REQUIRE(e2 > 0.0);
  CHECK(std::log2(e1 / e2) > 4.5);
}

TEST_CASE("integrator option validation") {
  const auto m = make_gh_model(gh_table_params());
  IntegratorOptions o;
  o.rel_tol = 0.0;
  try {
    integrate(m, vec({0.5, 0.1, 0.1}), o);
    FAIL("expected InvalidOptions");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidOptions);
  }
  o = IntegratorOptions{};
  try {
    integrate(m, vec({0.5, 0.1}), o);
    FAIL("expected InadmissibleInitialCondition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InadmissibleInitialCondition);
  }
  try {
    integrate_with_equilibrium_events(m, vec({0.5, 0.1, 0.1}), o, 0.7);
    FAIL("expected InvalidOptions");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidOptions);
  }
}

TEST_CASE("log and direct modes agree on a short horizon") {
  const auto m = make_gh_model(gh_table_params());
  IntegratorOptions o;
  o.t_max = 30.0;
  o.log_mode = true;
  const auto a = integrate(m, vec({0.7, 0.1, 0.05}), o);
  o.log_mode = false;
  const auto b = integrate(m, vec({0.7, 0.1, 0.05}), o);
  CHECK((a.states.back() - b.states.back()).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("events sit on the eta-sphere and alternate per equilibrium") {
  const auto m = make_gh_model(gh_table_params());
  IntegratorOptions o;
  o.t_max = 150.0;
  const double eta = 0.2;
  const auto t = integrate_with_equilibrium_events(m, vec({0.7, 0.1, 0.05}), o, eta);
  REQUIRE(t.events.size() >= 6);
  std::map<int, EventKind> last;
  for (const auto& e : t.events) {
    auto it = last.find(e.equilibrium);
    if (it != last.end()) CHECK(it->second != e.kind);
    last[e.equilibrium] = e.kind;
  }
  // Re-integrate up to a few event times and measure the distance.
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& e = t.events[k];
    IntegratorOptions cut = o;
    cut.t_max = e.t;
    const auto part = integrate(m, vec({0.7, 0.1, 0.05}), cut);
    const Vector xi = axis_equilibrium(3, std::abs(e.equilibrium), e.equilibrium > 0 ? 1 : -1).coordinates;
    CHECK(std::abs((part.states.back() - xi).norm() - eta) < 1e-6);
  }
}

TEST_CASE("output spacing bounds the gap between stored states") {
  const auto m = make_rpssl_model(rpssl_table_params('a'));
  IntegratorOptions o;
  o.t_max = 200.0;
  o.output_spacing = 0.01;
  const auto t = integrate(m, vec({0.9, 0.1, 0.05, 0.02, 0.01}), o);
  double worst = 0.0;
  for (std::size_t k = 1; k < t.states.size(); ++k) worst = std::max(worst, (t.states[k] - t.states[k - 1]).norm());
  CHECK(worst <= 0.01 * (1.0 + 1e-6));
}

TEST_CASE("integration is deterministic") {
  const auto m = make_ks_model(ks_table_params('b'));
  IntegratorOptions o;
  o.t_max = 400.0;
  const auto a = integrate_with_equilibrium_events(m, vec({0.1, 0.9, 0.05, 1e-12}), o, 0.2);
  const auto b = integrate_with_equilibrium_events(m, vec({0.1, 0.9, 0.05, 1e-12}), o, 0.2);
  REQUIRE(a.states.size() == b.states.size());
  for (std::size_t k = 0; k < a.states.size(); ++k) REQUIRE(a.states[k] == b.states[k]);
  REQUIRE(a.events.size() == b.events.size());
}

TEST_CASE("connection polylines lie in their coordinate plane") {
  const auto m = make_ks_model(ks_table_params('a'));
  for (const auto& [from, to] : ks_edges()) {
    const auto line = connection_polyline(m, axis_equilibrium(4, from), axis_equilibrium(4, to));
    REQUIRE(line.size() > 10);
    CHECK((line.front() - axis_equilibrium(4, from).coordinates).norm() == 0.0);
    CHECK((line.back() - axis_equilibrium(4, to).coordinates).norm() == 0.0);
    for (std::size_t k = 0; k < line.size(); ++k) {
      for (int j = 0; j < 4; ++j) {
        if (j != from - 1 && j != to - 1) REQUIRE(line[k](j) == 0.0);
      }
      if (k > 0) REQUIRE((line[k] - line[k - 1]).norm() <= 0.01 + 1e-9);
    }
  }
}

TEST_CASE("no connection where the field has none") {
  const auto m = make_gh_model(gh_table_params());
  try {
    // xi1 is contracting in direction 3, so there is no xi1 -> xi3 orbit.
    connection_polyline(m, axis_equilibrium(3, 1), axis_equilibrium(3, 3));
    FAIL("expected NoConnection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoConnection);
  }
}
