#include "hetnet/error.hpp"
#include "hetnet/presets.hpp"
#include "hetnet/visibility.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace hetnet;

namespace {

int rank(Prefix p) { return static_cast<int>(p); }

const NetworkGeometry& gh_geometry() {
  static const NetworkGeometry g = build_network_geometry(make_gh_model(gh_table_params()), gh_edges());
  return g;
}

VisibilityConfig small_config() {
  VisibilityConfig c;
  c.samples_per_delta = 3;
  c.t_max = 600.0;
  c.transient_T = 100.0;
  c.rng_seed = 11;
  return c;
}

}  // namespace

TEST_CASE("Rng is deterministic and uniform draws lie in [0, 1)") {
  Rng a(99), b(99), c(100);
  bool differs = false;
  for (int k = 0; k < 1000; ++k) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    differs = differs || u != c.uniform();
  }
  CHECK(differs);
}

TEST_CASE("sampled points sit strictly inside the delta-neighbourhood") {
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    const auto pts = sample_neighborhood(gh_geometry(), delta, 100, Exclusions::InvariantSubspaces, 5);
    REQUIRE(pts.size() == 100);
    for (const auto& x : pts) {
      const double d = gh_geometry().distance(x);
      CHECK(d > 0.0);
      CHECK(d < delta);
      CHECK((x.array() > 0.0).all());
    }
    CHECK(pts == sample_neighborhood(gh_geometry(), delta, 100, Exclusions::InvariantSubspaces, 5));
  }
}

TEST_CASE("prefix rule on hand-made fractions") {
  CHECK(prefix_from_fractions({1.0, 1.0, 1.0}, Exclusions::None) == Prefix::Plain);
  CHECK(prefix_from_fractions({1.0, 1.0, 1.0}, Exclusions::InvariantSubspaces) == Prefix::Almost);
  CHECK(prefix_from_fractions({0.8, 1.0, 1.0}, Exclusions::InvariantSubspaces) == Prefix::Almost);
  CHECK(prefix_from_fractions({0.7, 0.9, 0.96}, Exclusions::None) == Prefix::Essentially);
  CHECK(prefix_from_fractions({0.7, 0.9, 0.5}, Exclusions::None) == Prefix::Fragmentarily);
  CHECK(prefix_from_fractions({0.7, 0.0, 1.0}, Exclusions::None) == Prefix::None);
}

TEST_CASE("prefix lattice is monotone in the fractions") {
  Rng rng(2024);
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<double> f(3), g(3);
    for (int k = 0; k < 3; ++k) {
      // Coarse grid so that exact 0 and 1 occur often.
      f[k] = std::floor(rng.uniform() * 21.0) / 20.0;
      g[k] = std::min(1.0, f[k] + std::floor(rng.uniform() * 4.0) / 20.0);
    }
    for (auto ex : {Exclusions::None, Exclusions::InvariantSubspaces}) {
      CHECK(rank(prefix_from_fractions(g, ex)) <= rank(prefix_from_fractions(f, ex)));
    }
    CHECK(rank(prefix_from_fractions(f, Exclusions::None)) <=
          rank(prefix_from_fractions(f, Exclusions::InvariantSubspaces)) + 1);
  }
}

TEST_CASE("mode flags respect A => L => V") {
  for (int bits = 0; bits < 32; ++bits) {
    TrajectoryVerdict v;
    v.covered_all = bits & 1;
    v.stayed_within_epsilon = bits & 2;
    v.returned_within_epsilon = v.stayed_within_epsilon || (bits & 4);
    v.converged = bits & 8;
    v.omega_is_target = v.converged && (bits & 16);
    const auto f = mode_flags(v);
    if (f.asymptotic) CHECK(f.lyapunov);
    if (f.lyapunov) CHECK(f.visible);
    if (f.quasi) CHECK(v.converged);
  }
}

TEST_CASE("small GH run: deterministic, thread-count independent, modes ordered") {
  const auto m = make_gh_model(gh_table_params());
  auto cfg = small_config();
  cfg.threads = 1;
  const auto a = gather_evidence(m, gh_geometry(), gh_edges(), cfg, "cycle123");
  cfg.threads = 2;
  const auto b = gather_evidence(m, gh_geometry(), gh_edges(), cfg, "cycle123");
  REQUIRE(a.samples.size() == 9);
  REQUIRE(b.samples.size() == 9);
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    CHECK(a.samples[k].x0 == b.samples[k].x0);
    CHECK(a.samples[k].verdict.final_distance == b.samples[k].verdict.final_distance);
    CHECK(a.samples[k].verdict.covered_elements == b.samples[k].verdict.covered_elements);
  }
  const auto v = verdict_from_evidence(a);
  const auto& pm = v.per_mode;
  const auto prefix_of = [&](VisibilityMode mode) { return rank(pm.at(mode).prefix); };
  CHECK(prefix_of(VisibilityMode::AsymptoticallyVisible) >= prefix_of(VisibilityMode::LyapunovVisible));
  CHECK(prefix_of(VisibilityMode::LyapunovVisible) >= prefix_of(VisibilityMode::Visible));
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(pm.at(VisibilityMode::AsymptoticallyVisible).fractions[k] <=
          pm.at(VisibilityMode::LyapunovVisible).fractions[k]);
    CHECK(pm.at(VisibilityMode::LyapunovVisible).fractions[k] <= pm.at(VisibilityMode::Visible).fractions[k]);
  }
  CHECK(v.trajectories == 9);
}

TEST_CASE("visibility error codes") {
  const auto m = make_gh_model(gh_table_params());
  auto cfg = small_config();
  cfg.t_max = 150.0;
  try {
    gather_evidence(m, gh_geometry(), gh_edges(), cfg);
    FAIL("expected every trajectory to fail");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AllTrajectoriesFailed);
  }
  IntegratorOptions o;
  o.t_max = 150.0;
  const auto traj = integrate(m, axis_equilibrium(3, 1).coordinates * 0.9 + Vector::Constant(3, 0.01), o);
  try {
    classify_trajectory(traj, gh_geometry(), cfg);
    FAIL("expected TrajectoryTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TrajectoryTooShort);
  }
  cfg = small_config();
  cfg.delta_ladder = {1e-3, 1e-2};
  try {
    cfg.validate();
    FAIL("expected InvalidOptions");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidOptions);
  }
  try {
    sample_neighborhood(gh_geometry().subset({}), 1e-3, 5, Exclusions::None, 1);
    FAIL("expected SamplingFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SamplingFailed);
  }
}
