#include "hetnet/visibility.hpp"

#include "hetnet/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <thread>

namespace hetnet {

std::string to_string(Exclusions e) {
  return e == Exclusions::None ? "none" : "invariant-subspaces";
}

std::string to_string(VisibilityMode m) {
  switch (m) {
    case VisibilityMode::AsymptoticallyVisible: return "AsymptoticallyVisible";
    case VisibilityMode::LyapunovVisible: return "LyapunovVisible";
    case VisibilityMode::QuasiVisible: return "QuasiVisible";
    case VisibilityMode::Visible: return "Visible";
    case VisibilityMode::NotVisible: return "NotVisible";
  }
  return "Unknown";
}

std::string to_string(Prefix p) {
  switch (p) {
    case Prefix::Plain: return "plain";
    case Prefix::Almost: return "almost";
    case Prefix::Essentially: return "essentially";
    case Prefix::Fragmentarily: return "fragmentarily";
    case Prefix::None: return "none";
  }
  return "unknown";
}

void VisibilityConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidOptions, msg); };
  if (delta_ladder.size() < 2) fail("delta_ladder needs at least two values");
  for (std::size_t k = 0; k < delta_ladder.size(); ++k) {
    if (!(delta_ladder[k] > 0.0)) fail("delta_ladder entries must be positive");
    if (k > 0 && !(delta_ladder[k] < delta_ladder[k - 1])) fail("delta_ladder must be strictly decreasing");
  }
  if (!(epsilon > 0.0)) fail("epsilon must be positive");
  if (samples_per_delta < 1) fail("samples_per_delta must be at least 1");
  if (!(transient_T >= 0.0)) fail("transient_T must be nonnegative");
  if (!(t_max > 0.0)) fail("t_max must be positive");
  if (recurrence_count < 2) fail("recurrence_count must be at least 2");
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) fail("tolerances must be positive");
  if (threads < 0) fail("threads must be nonnegative");
}

// ---------------------------------------------------------------- Rng

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  for (auto& s : s_) s = splitmix64(seed);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// ---------------------------------------------------------------- sampling

std::vector<Vector> sample_neighborhood(const NetworkGeometry& g, double delta, int K,
                                        Exclusions exclusions, std::uint64_t seed) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidOptions, "delta must be positive");
  if (K < 1) throw Error(ErrorCode::InvalidOptions, "K must be at least 1");
  const int n = g.dimension();
  if (n < 1 || (g.edges().empty() && g.equilibria().empty())) {
    throw Error(ErrorCode::SamplingFailed, "cannot sample around an empty set");
  }
  Rng rng(seed);
  const double length = g.total_length();
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(K));
  const long max_attempts = 1000L * K;
  long attempts = 0;
  Vector dir(n);
  while (static_cast<int>(out.size()) < K) {
    if (++attempts > max_attempts) {
      throw Error(ErrorCode::SamplingFailed, "rejection sampling exhausted its attempts");
    }
    Vector base;
    if (g.edges().empty()) {
      const auto& eqs = g.equilibria();
      base = eqs[std::min(eqs.size() - 1, static_cast<std::size_t>(rng.uniform() * eqs.size()))]
                 .coordinates;
    } else {
      base = g.point_at(rng.uniform() * length);
    }
    const double r = delta * std::pow(0.01, 1.0 - rng.uniform());
    double norm = 0.0;
    while (norm < 1e-12) {
      for (int k = 0; k < n; ++k) dir(k) = rng.normal();
      norm = dir.norm();
    }
    Vector x = base + (r / norm) * dir;
    if (exclusions == Exclusions::InvariantSubspaces) {
      x = x.cwiseAbs();
      if ((x.array() <= 0.0).any()) continue;
    }
    const double d = g.distance(x);
    if (!(d > 0.0) || !(d < delta)) continue;
    out.push_back(std::move(x));
  }
  return out;
}

// ---------------------------------------------------------------- classification

namespace {

std::vector<Vector> outside_equilibria(const NetworkGeometry& g, const NetworkGeometry& x) {
  std::vector<Vector> out;
  for (const auto& e : g.equilibria()) {
    const bool in_x = std::any_of(x.equilibria().begin(), x.equilibria().end(),
                                  [&](const Equilibrium& q) { return q.id() == e.id(); });
    if (!in_x) out.push_back(e.coordinates);
  }
  return out;
}

TrajectoryVerdict classify_with(const Trajectory& traj, const NetworkGeometry& target,
                                const std::vector<NetworkElement>& elements,
                                const std::vector<Vector>& outside, const VisibilityConfig& cfg) {
  if (cfg.t_max < 2.0 * cfg.transient_T) {
    throw Error(ErrorCode::TrajectoryTooShort, "t_max must be at least twice transient_T");
  }
  if (traj.states.empty()) throw Error(ErrorCode::TrajectoryTooShort, "empty trajectory");

  TrajectoryVerdict v;
  v.element_count = static_cast<int>(elements.size());
  const double eps = cfg.epsilon;
  const double eps2 = eps * eps;
  const double T = cfg.transient_T;
  const double t_end = traj.final_time();
  const double t_omega = 0.8 * t_end;
  const double t_mid = 0.5 * (T + t_end);

  v.escaped = traj.termination == Termination::Escape;
  v.stayed_within_epsilon = true;
  v.returned_within_epsilon = true;
  std::vector<int> counts(elements.size(), 0);
  std::vector<char> inside(elements.size(), 0), omega(elements.size(), 0);
  bool any_inside = false;
  double first_half_max = 0.0, second_half_max = 0.0;

  // Elements grouped by owning edge so whole edges can be skipped by their
  // off-plane distance. Group 0 holds the equilibria.
  const auto& edges = target.edges();
  std::vector<std::vector<int>> groups(edges.size() + 1);
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const auto& el = elements[e];
    groups[el.kind == NetworkElement::Kind::Equilibrium ? 0 : el.owner + 1].push_back(static_cast<int>(e));
  }
  const int n = target.dimension();
  const double check_spacing2 = (eps / 8.0) * (eps / 8.0);
  Vector last_checked;

  auto visit = [&](int e, const Vector& x, double t) {
    const bool near = (x - elements[e].point).squaredNorm() < eps2;
    if (near && !inside[e] && t > T) ++counts[e];
    if (near && t > t_omega) omega[e] = 1;
    inside[e] = near;
    any_inside |= near;
  };

  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const double t = traj.times[k];
    const Vector& x = traj.states[k];
    if (!x.allFinite()) {
      v.escaped = true;
      break;
    }
    const double d = target.distance(x);
    v.max_distance = std::max(v.max_distance, d);
    if (t > T) {
      if (t <= t_mid) first_half_max = std::max(first_half_max, d);
      else second_half_max = std::max(second_half_max, d);
    }
    if (d >= eps) {
      for (const auto& o : outside) v.detoured |= (x - o).squaredNorm() < eps2;
      v.stayed_within_epsilon = false;
      if (t > T) v.returned_within_epsilon = false;
      if (any_inside) {
        std::fill(inside.begin(), inside.end(), 0);
        any_inside = false;
      }
      last_checked.resize(0);
      continue;
    }
    const bool last = k + 1 == traj.states.size();
    if (last_checked.size() == n && !last && (x - last_checked).squaredNorm() < check_spacing2) continue;
    last_checked = x;
    any_inside = false;
    for (int e : groups[0]) visit(e, x, t);
    for (std::size_t g = 0; g < edges.size(); ++g) {
      const int i = std::abs(edges[g].from) - 1, j = std::abs(edges[g].to) - 1;
      double off2 = 0.0;
      for (int c = 0; c < n; ++c) {
        if (c != i && c != j) off2 += x(c) * x(c);
      }
      if (off2 >= eps2) {
        for (int e : groups[g + 1]) {
          if (inside[e]) inside[e] = 0;
        }
        continue;
      }
      for (int e : groups[g + 1]) visit(e, x, t);
    }
  }
  v.final_distance = target.distance(traj.states.back());

  if (v.escaped) {
    v.stayed_within_epsilon = false;
    v.returned_within_epsilon = false;
  }
  for (std::size_t e = 0; e < elements.size(); ++e) {
    if (counts[e] >= cfg.recurrence_count) v.covered_elements.push_back(static_cast<int>(e));
    if (omega[e]) v.omega_estimate.push_back(static_cast<int>(e));
  }
  v.covered_all = !v.escaped && v.covered_elements.size() == elements.size();
  v.omega_is_target = !v.escaped && v.omega_estimate.size() == elements.size();
  // Below the polyline resolution the distance no longer resolves convergence.
  const double floor = 10.0 * target.resolution();
  const bool decreasing_tail = second_half_max <= 0.5 * first_half_max || second_half_max <= floor;
  v.converged = !v.escaped && v.returned_within_epsilon && v.final_distance < eps / 10.0 &&
                decreasing_tail;
  return v;
}

}  // namespace

TrajectoryVerdict classify_trajectory(const Trajectory& traj, const NetworkGeometry& target,
                                      const VisibilityConfig& cfg) {
  return classify_with(traj, target, target.elements(cfg.epsilon / 2.0), {}, cfg);
}

TrajectoryVerdict classify_trajectory(const Trajectory& traj, const NetworkGeometry& g,
                                      const std::vector<Edge>& target, const VisibilityConfig& cfg) {
  const NetworkGeometry x_geometry = g.subset(target);
  return classify_with(traj, x_geometry, x_geometry.elements(cfg.epsilon / 2.0),
                       outside_equilibria(g, x_geometry), cfg);
}

ModeFlags mode_flags(const TrajectoryVerdict& v) {
  ModeFlags f;
  f.lyapunov = v.covered_all && v.stayed_within_epsilon;
  f.asymptotic = f.lyapunov && v.converged;
  f.quasi = v.converged && v.omega_is_target;
  f.visible = v.covered_all && v.returned_within_epsilon;
  return f;
}

Prefix prefix_from_fractions(const std::vector<double>& fractions, Exclusions exclusions) {
  if (fractions.empty()) return Prefix::None;
  const bool all_positive =
      std::all_of(fractions.begin(), fractions.end(), [](double f) { return f > 0.0; });
  if (!all_positive) return Prefix::None;
  // The ladder stands in for delta -> 0: the smallest delta decides, the
  // larger ones only have to show some attraction.
  if (fractions.back() >= 1.0) return exclusions == Exclusions::None ? Prefix::Plain : Prefix::Almost;
  if (fractions.back() >= 0.95) return Prefix::Essentially;
  return Prefix::Fragmentarily;
}

int Evidence::failures() const {
  return static_cast<int>(std::count_if(samples.begin(), samples.end(),
                                        [](const SampleRecord& s) { return s.failed; }));
}

int default_thread_count() {
  if (const char* env = std::getenv("HETNET_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<int>(std::min<long>(v, 256));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Evidence gather_evidence(const NetworkModel& m, const NetworkGeometry& g,
                         const std::vector<Edge>& target, const VisibilityConfig& cfg,
                         std::string target_id) {
  cfg.validate();
  if (target.empty()) throw Error(ErrorCode::UnknownTarget, "target set is empty");
  const NetworkGeometry x_geometry = g.subset(target);
  const auto elements = x_geometry.elements(cfg.epsilon / 2.0);
  const auto outside = outside_equilibria(g, x_geometry);

  Evidence ev;
  ev.target_id = std::move(target_id);
  ev.config = cfg;
  for (std::size_t di = 0; di < cfg.delta_ladder.size(); ++di) {
    const double delta = cfg.delta_ladder[di];
    std::uint64_t seed = cfg.rng_seed;
    const std::uint64_t mixed = splitmix64(seed) ^ (0xD1B54A32D192ED03ull * (di + 1));
    const auto points = sample_neighborhood(x_geometry, delta, cfg.samples_per_delta,
                                            cfg.exclusions, mixed);
    for (std::size_t k = 0; k < points.size(); ++k) {
      SampleRecord rec;
      rec.delta = delta;
      rec.index = static_cast<int>(k);
      rec.x0 = points[k];
      ev.samples.push_back(std::move(rec));
    }
  }

  IntegratorOptions opts;
  opts.t_max = cfg.t_max;
  opts.rel_tol = cfg.rel_tol;
  opts.abs_tol = cfg.abs_tol;
  opts.log_mode = true;
  opts.max_step = 1.0;
  opts.output_spacing = cfg.epsilon / 4.0;

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < ev.samples.size(); i = next++) {
      auto& rec = ev.samples[i];
      try {
        const auto traj = integrate(m, rec.x0, opts);
        if (traj.termination == Termination::StepUnderflow ||
            traj.termination == Termination::StepLimit) {
          throw Error(ErrorCode::SamplingFailed,
                      "integration stopped early: " + to_string(traj.termination));
        }
        rec.verdict = classify_with(traj, x_geometry, elements, outside, cfg);
      } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
      }
    }
  };
  const int workers = std::max(
      1, std::min(cfg.threads > 0 ? cfg.threads : default_thread_count(),
                  static_cast<int>(ev.samples.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (!ev.samples.empty() && ev.failures() == static_cast<int>(ev.samples.size())) {
    throw Error(ErrorCode::AllTrajectoriesFailed,
                "all sampled trajectories failed: " + ev.samples.front().error);
  }
  return ev;
}

namespace {

template <class Pred>
std::vector<double> fractions_by_delta(const Evidence& ev, Pred pred) {
  std::vector<double> out;
  for (double delta : ev.config.delta_ladder) {
    int ok = 0, total = 0;
    for (const auto& s : ev.samples) {
      if (s.delta != delta || s.failed) continue;
      ++total;
      if (pred(s.verdict)) ++ok;
    }
    out.push_back(total > 0 ? static_cast<double>(ok) / total : 0.0);
  }
  return out;
}

}  // namespace

StabilityFlags stability_from_evidence(const Evidence& ev) {
  StabilityFlags s;
  s.stayed_fractions = fractions_by_delta(ev, [](const TrajectoryVerdict& v) { return v.stayed_within_epsilon; });
  s.converged_fractions = fractions_by_delta(ev, [](const TrajectoryVerdict& v) { return v.converged; });
  s.stayed_and_converged_fractions = fractions_by_delta(
      ev, [](const TrajectoryVerdict& v) { return v.stayed_within_epsilon && v.converged; });
  s.lyapunov_consistent = !s.stayed_fractions.empty() && s.stayed_fractions.back() >= 1.0;
  s.quasi_asymptotic_consistent = !s.converged_fractions.empty() && s.converged_fractions.back() >= 1.0;
  s.fas_consistent = !s.stayed_and_converged_fractions.empty() &&
                     std::all_of(s.stayed_and_converged_fractions.begin(),
                                 s.stayed_and_converged_fractions.end(), [](double f) { return f > 0.0; });
  return s;
}

VisibilityVerdict verdict_from_evidence(const Evidence& ev) {
  VisibilityVerdict out;
  out.target_id = ev.target_id;
  out.trajectories = static_cast<int>(ev.samples.size());
  out.failures = ev.failures();
  out.stability_modes = stability_from_evidence(ev);

  const std::pair<VisibilityMode, bool ModeFlags::*> modes[] = {
      {VisibilityMode::AsymptoticallyVisible, &ModeFlags::asymptotic},
      {VisibilityMode::LyapunovVisible, &ModeFlags::lyapunov},
      {VisibilityMode::QuasiVisible, &ModeFlags::quasi},
      {VisibilityMode::Visible, &ModeFlags::visible},
  };
  // Strongest prefix wins; ties go to the first mode in the list above.
  const ModeResult* best = nullptr;
  for (const auto& [mode, member] : modes) {
    ModeResult r;
    r.mode = mode;
    r.fractions = fractions_by_delta(ev, [member](const TrajectoryVerdict& v) {
      return mode_flags(v).*member;
    });
    r.prefix = prefix_from_fractions(r.fractions, ev.config.exclusions);
    out.per_mode[mode] = r;
  }
  for (const auto& [mode, member] : modes) {
    const auto& r = out.per_mode[mode];
    if (r.prefix == Prefix::None) continue;
    if (!best || static_cast<int>(r.prefix) < static_cast<int>(best->prefix)) best = &r;
  }
  const auto& ladder = ev.config.delta_ladder;
  if (best) {
    out.mode = best->mode;
    out.prefix = best->prefix;
    for (std::size_t k = 0; k < ladder.size(); ++k) out.fraction_per_delta[ladder[k]] = best->fractions[k];
  } else {
    out.mode = VisibilityMode::NotVisible;
    out.prefix = Prefix::None;
    const auto& v = out.per_mode[VisibilityMode::Visible];
    for (std::size_t k = 0; k < ladder.size(); ++k) out.fraction_per_delta[ladder[k]] = v.fractions[k];
  }
  return out;
}

VisibilityVerdict visibility_verdict(const NetworkModel& m, const NetworkGeometry& g,
                                     const std::vector<Edge>& target, const VisibilityConfig& cfg,
                                     std::string target_id) {
  return verdict_from_evidence(gather_evidence(m, g, target, cfg, std::move(target_id)));
}

StabilityFlags stability_report(const NetworkModel& m, const NetworkGeometry& g,
                                const std::vector<Edge>& target, const VisibilityConfig& cfg) {
  return stability_from_evidence(gather_evidence(m, g, target, cfg));
}

}  // namespace hetnet
