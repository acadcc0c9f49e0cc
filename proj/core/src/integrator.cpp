#include "hetnet/integrator.hpp"

#include "dopri.hpp"
#include "hetnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace hetnet {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::TimeLimit: return "TimeLimit";
    case Termination::StepUnderflow: return "StepUnderflow";
    case Termination::Escape: return "Escape";
    case Termination::UserStop: return "UserStop";
    case Termination::StepLimit: return "StepLimit";
  }
  return "Unknown";
}

std::string to_string(EventKind k) { return k == EventKind::Enter ? "Enter" : "Exit"; }

void IntegratorOptions::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidOptions, what); };
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) bad("rel_tol must lie in (0, 1)");
  if (!(abs_tol > 0.0 && abs_tol < 1.0)) bad("abs_tol must lie in (0, 1)");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) bad("t_max must be positive");
  if (!(floor > 0.0 && floor < 1e-10)) bad("floor must lie in (0, 1e-10)");
  if (max_steps <= 0) bad("max_steps must be positive");
  if (!(escape_radius > 0.0)) bad("escape_radius must be positive");
  if (!(max_step > 0.0)) bad("max_step must be positive");
  if (output_spacing < 0.0) bad("output_spacing must be nonnegative");
}

namespace {

struct EventSpec {
  double eta = 0.2;
  std::vector<Equilibrium> equilibria;
};

using StopFn = std::function<bool(double, const Vector&)>;

// Maps the integrated variables y to the state x. In log mode y holds
// ln|x_j| for the nonzero components only.
struct StateMap {
  int n = 0;
  bool log_mode = false;
  bool cubic = true;
  std::vector<int> active;
  Vector signs;

  void to_x(const Vector& y, Vector& x) const {
    if (!log_mode) {
      x = y;
      return;
    }
    x.setZero(n);
    for (std::size_t i = 0; i < active.size(); ++i) {
      const int j = active[i];
      x(j) = signs(j) * std::exp(y(static_cast<Eigen::Index>(i)));
    }
  }

  void to_log(const Vector& y, Vector& u) const {
    u.setConstant(n, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < active.size(); ++i) u(active[i]) = y(static_cast<Eigen::Index>(i));
  }
};

class Recorder {
 public:
  Recorder(Trajectory& traj, const StateMap& map, const EventSpec* events, double spacing)
      : traj_(traj), map_(map), events_(events), spacing_(spacing) {}

  void start(double t, const Vector& y) {
    map_.to_x(y, x_);
    push(t, y, x_);
    if (events_) {
      inside_.assign(events_->equilibria.size(), false);
      for (std::size_t e = 0; e < inside_.size(); ++e) {
        inside_[e] = event_value(e, x_) < 0.0;
        if (inside_[e]) {
          traj_.events.push_back({EventKind::Enter, t, events_->equilibria[e].id()});
        }
      }
    }
    prev_t_ = t;
    prev_x_ = x_;
  }

  /// Records an accepted step ending at (t, y) with dense output `d`.
  void record(double t, const Vector& y, const detail::DenseOutput& d) {
    map_.to_x(y, x_);
    int pieces = 1;
    if (spacing_ > 0.0) {
      const double gap = (x_ - prev_x_).norm();
      if (std::isfinite(gap)) {
        pieces = static_cast<int>(std::min(10000.0, std::ceil(gap / spacing_)));
        pieces = std::max(pieces, 1);
      }
    }
    for (int i = 1; i < pieces; ++i) {
      const double ts = d.t0 + d.h * static_cast<double>(i) / pieces;
      d.eval(ts, ybuf_);
      map_.to_x(ybuf_, xbuf_);
      check_events(ts, xbuf_, d);
      push(ts, ybuf_, xbuf_);
      prev_t_ = ts;
      prev_x_ = xbuf_;
    }
    check_events(t, x_, d);
    push(t, y, x_);
    prev_t_ = t;
    prev_x_ = x_;
  }

  const Vector& last_x() const { return x_; }

 private:
  double event_value(std::size_t e, const Vector& x) const {
    return (x - events_->equilibria[e].coordinates).norm() - events_->eta;
  }

  void check_events(double t, const Vector& x, const detail::DenseOutput& d) {
    if (!events_) return;
    struct Pending {
      double t;
      std::size_t e;
      bool enter;
    };
    std::vector<Pending> pending;
    for (std::size_t e = 0; e < inside_.size(); ++e) {
      const bool now_inside = event_value(e, x) < 0.0;
      if (now_inside == inside_[e]) continue;
      // Bisection on the dense output for the crossing time.
      double lo = prev_t_, hi = t;
      while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        d.eval(mid, ybuf_);
        map_.to_x(ybuf_, xbuf_);
        const bool mid_inside = event_value(e, xbuf_) < 0.0;
        if (mid_inside == inside_[e]) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      pending.push_back({hi, e, now_inside});
      inside_[e] = now_inside;
    }
    // Exits are recorded before entries at equal times.
    std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
      if (a.t != b.t) return a.t < b.t;
      return !a.enter && b.enter;
    });
    for (const auto& p : pending) {
      traj_.events.push_back({p.enter ? EventKind::Enter : EventKind::Exit, p.t,
                              events_->equilibria[p.e].id()});
    }
  }

  void push(double t, const Vector& y, const Vector& x) {
    traj_.times.push_back(t);
    traj_.states.push_back(x);
    if (map_.log_mode) {
      map_.to_log(y, ubuf_);
      traj_.log_states.push_back(ubuf_);
    }
  }

  Trajectory& traj_;
  const StateMap& map_;
  const EventSpec* events_;
  double spacing_;
  std::vector<bool> inside_;
  double prev_t_ = 0.0;
  Vector prev_x_, x_, xbuf_, ybuf_, ubuf_;
};

detail::StepperConfig stepper_config(const IntegratorOptions& opts) {
  detail::StepperConfig cfg;
  cfg.rel_tol = opts.rel_tol;
  cfg.abs_tol = opts.abs_tol;
  cfg.max_step = opts.max_step;
  cfg.max_steps = opts.max_steps;
  return cfg;
}

template <class Rhs, class Admissible, class AfterStep>
Termination drive(detail::DormandPrince45<Rhs>& stepper, Recorder& rec, const IntegratorOptions& opts,
                  Admissible&& admissible, AfterStep&& after_step, const StopFn* stop) {
  while (stepper.t() < opts.t_max) {
    const auto status = stepper.step(opts.t_max, admissible);
    if (status == detail::StepStatus::Underflow) return Termination::StepUnderflow;
    if (status == detail::StepStatus::StepLimit) return Termination::StepLimit;
    after_step(stepper);
    rec.record(stepper.t(), stepper.y(), stepper.dense());
    const Vector& x = rec.last_x();
    if (!x.allFinite() || x.norm() > opts.escape_radius) return Termination::Escape;
    if (stop && (*stop)(stepper.t(), x)) return Termination::UserStop;
  }
  return Termination::TimeLimit;
}

void check_initial(const NetworkModel& m, const Vector& x0) {
  if (x0.size() != m.dimension()) {
    throw Error(ErrorCode::InadmissibleInitialCondition, "initial condition has wrong dimension");
  }
  if (!x0.allFinite()) {
    throw Error(ErrorCode::InadmissibleInitialCondition, "initial condition is not finite");
  }
  if (m.orthant_restricted() && (x0.array() < 0.0).any()) {
    throw Error(ErrorCode::InadmissibleInitialCondition,
                "orthant-restricted model requires a nonnegative initial condition");
  }
}

Trajectory run(const NetworkModel& m, const Vector& x0, const IntegratorOptions& opts,
               const EventSpec* events, const StopFn* stop) {
  opts.validate();
  check_initial(m, x0);
  const int n = m.dimension();
  const bool cubic = m.representation() == Representation::EquivariantCubic;

  Trajectory traj;
  traj.tolerance_used = opts.rel_tol;

  StateMap map;
  map.n = n;
  map.log_mode = opts.log_mode;
  map.cubic = cubic;

  if (opts.log_mode) {
    map.signs = Vector::Ones(n);
    for (int j = 0; j < n; ++j) {
      if (x0(j) != 0.0) {
        map.active.push_back(j);
        map.signs(j) = x0(j) < 0.0 ? -1.0 : 1.0;
      }
    }
    const auto na = static_cast<Eigen::Index>(map.active.size());
    Vector y0(na);
    for (Eigen::Index i = 0; i < na; ++i) y0(i) = std::log(std::abs(x0(map.active[i])));

    // u_j' = g_j(s) with s_k = exp(2 u_k) (cubic) or exp(u_k) (Lotka-Volterra).
    auto rhs = [&m, &map, cubic, s = Vector(Vector::Zero(n)), g = Vector(n)](
                   double, const Vector& u, Vector& du) mutable {
      for (std::size_t i = 0; i < map.active.size(); ++i) {
        const double v = u(static_cast<Eigen::Index>(i));
        s(map.active[i]) = std::exp(cubic ? 2.0 * v : v);
      }
      m.growth_rates(s, g);
      for (std::size_t i = 0; i < map.active.size(); ++i) du(static_cast<Eigen::Index>(i)) = g(map.active[i]);
    };
    detail::DormandPrince45<decltype(rhs)> stepper(rhs, stepper_config(opts));
    stepper.reset(0.0, y0);
    Recorder rec(traj, map, events, opts.output_spacing);
    rec.start(0.0, y0);
    const double log_escape = std::log(opts.escape_radius);
    auto admissible = [log_escape](const Vector& u) {
      // A step that lands far outside the escape ball is retried with a
      // smaller step so the escape is recorded close to the boundary.
      return u.size() == 0 || u.maxCoeff() < log_escape + 5.0;
    };
    traj.termination = drive(stepper, rec, opts, admissible, [](auto&) {}, stop);
    traj.accepted_steps = stepper.accepted();
    traj.rejected_steps = stepper.rejected();
    return traj;
  }

  auto rhs = [&m](double, const Vector& x, Vector& dx) { m.evaluate(x, dx); };
  detail::DormandPrince45<decltype(rhs)> stepper(rhs, stepper_config(opts));
  stepper.reset(0.0, x0);
  Recorder rec(traj, map, events, opts.output_spacing);
  rec.start(0.0, x0);
  const bool orthant = m.orthant_restricted();
  auto admissible = [orthant](const Vector& x) { return !orthant || (x.array() >= 0.0).all(); };
  const double floor = opts.floor;
  auto flush = [floor](auto& st) {
    Vector y = st.y();
    bool changed = false;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (y(i) != 0.0 && std::abs(y(i)) < floor) {
        y(i) = 0.0;
        changed = true;
      }
    }
    if (changed) st.set_state(y);
  };
  traj.termination = drive(stepper, rec, opts, admissible, flush, stop);
  traj.accepted_steps = stepper.accepted();
  traj.rejected_steps = stepper.rejected();
  return traj;
}

}  // namespace

Trajectory integrate(const NetworkModel& m, const Vector& x0, const IntegratorOptions& opts) {
  return run(m, x0, opts, nullptr, nullptr);
}

Trajectory integrate_with_equilibrium_events(const NetworkModel& m, const Vector& x0,
                                             const IntegratorOptions& opts, double eta) {
  if (!(eta > 0.0 && eta < 0.5)) {
    throw Error(ErrorCode::InvalidOptions, "eta must lie in (0, 0.5)");
  }
  EventSpec spec;
  spec.eta = eta;
  spec.equilibria = equilibria(m);
  return run(m, x0, opts, &spec, nullptr);
}

Trajectory solve_ode(const RhsFn& f, const Vector& y0, const IntegratorOptions& opts) {
  opts.validate();
  Trajectory traj;
  traj.tolerance_used = opts.rel_tol;
  StateMap map;
  map.n = static_cast<int>(y0.size());
  auto rhs = [&f](double t, const Vector& y, Vector& dy) { f(t, y, dy); };
  detail::DormandPrince45<decltype(rhs)> stepper(rhs, stepper_config(opts));
  stepper.reset(0.0, y0);
  Recorder rec(traj, map, nullptr, 0.0);
  rec.start(0.0, y0);
  auto admissible = [](const Vector&) { return true; };
  traj.termination = drive(stepper, rec, opts, admissible, [](auto&) {}, nullptr);
  traj.accepted_steps = stepper.accepted();
  traj.rejected_steps = stepper.rejected();
  return traj;
}

Polyline connection_polyline(const NetworkModel& m, const Equilibrium& from, const Equilibrium& to,
                             double seed_offset, double t_max, double spacing) {
  const int n = m.dimension();
  auto fail = [&](const std::string& why) {
    std::ostringstream msg;
    msg << "no connection " << from.id() << " -> " << to.id() << ": " << why;
    throw Error(ErrorCode::NoConnection, msg.str());
  };
  if (from.axis < 1 || from.axis > n || to.axis < 1 || to.axis > n) {
    throw Error(ErrorCode::IndexOutOfRange, "equilibrium axis out of range");
  }
  if (from.axis == to.axis) fail("equilibria share an axis");
  if (!(seed_offset > 0.0 && seed_offset < 0.1)) {
    throw Error(ErrorCode::InvalidOptions, "seed_offset must lie in (0, 0.1)");
  }
  if (!(spacing > 0.0 && spacing <= 0.01)) {
    throw Error(ErrorCode::InvalidOptions, "polyline spacing must lie in (0, 0.01]");
  }
  const double expanding = m.coupling()(from.axis - 1, to.axis - 1);
  if (!(expanding > 0.0)) fail("the eigenvalue in that direction is not expanding");
  if (m.orthant_restricted() && (from.sign < 0 || to.sign < 0)) {
    fail("negative equilibria lie outside the orthant");
  }

  Vector x0 = Vector::Zero(n);
  x0(from.axis - 1) = from.sign;
  x0(to.axis - 1) = to.sign * seed_offset;

  IntegratorOptions opts;
  opts.t_max = t_max;
  opts.log_mode = true;
  opts.max_step = 0.5;
  opts.output_spacing = spacing;
  const Vector target = to.coordinates;
  const double stop_radius = 10.0 * seed_offset;
  StopFn stop = [&target, stop_radius](double, const Vector& x) {
    return (x - target).norm() < stop_radius;
  };
  Trajectory traj = run(m, x0, opts, nullptr, &stop);
  if (traj.termination != Termination::UserStop) fail("trajectory did not approach the target");

  Polyline out;
  out.reserve(traj.states.size() + 2);
  out.push_back(from.coordinates);
  for (auto& s : traj.states) out.push_back(std::move(s));
  out.push_back(to.coordinates);
  return out;
}

}  // namespace hetnet
