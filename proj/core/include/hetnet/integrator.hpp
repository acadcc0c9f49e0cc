#pragma once

#include "hetnet/models.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hetnet {

enum class Termination { TimeLimit, StepUnderflow, Escape, UserStop, StepLimit };

std::string to_string(Termination t);

enum class EventKind { Enter, Exit };

std::string to_string(EventKind k);

/// Crossing of the sphere of radius eta around an equilibrium.
struct Event {
  EventKind kind = EventKind::Enter;
  double t = 0.0;
  /// Signed axis id of the equilibrium.
  int equilibrium = 0;
};

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double t_max = 500.0;
  /// Integrate u_j = ln|x_j| for nonzero components. Exact zeros stay frozen.
  bool log_mode = true;
  /// In direct mode, nonzero magnitudes below this value are flushed to 0.
  double floor = 1e-300;
  long max_steps = 10'000'000;
  double escape_radius = 10.0;
  double max_step = 1.0;
  /// When positive, dense output is inserted so consecutive stored states
  /// are at most this far apart (euclidean, in x).
  double output_spacing = 0.0;

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  /// ln|x| per stored state when integrated in log mode (-inf for exact
  /// zeros); empty otherwise.
  std::vector<Vector> log_states;
  std::vector<Event> events;
  double tolerance_used = 0.0;
  Termination termination = Termination::TimeLimit;
  long accepted_steps = 0;
  long rejected_steps = 0;

  int dimension() const { return states.empty() ? 0 : static_cast<int>(states.front().size()); }
  double final_time() const { return times.empty() ? 0.0 : times.back(); }
};

Trajectory integrate(const NetworkModel& m, const Vector& x0, const IntegratorOptions& opts);

Trajectory integrate_with_equilibrium_events(const NetworkModel& m, const Vector& x0,
                                             const IntegratorOptions& opts, double eta);

/// Right-hand side for generic direct-mode integration.
using RhsFn = std::function<void(double t, const Vector& y, Vector& dydt)>;

/// Plain Dormand-Prince integration of an arbitrary system over [0, t_end].
/// Stores every accepted step. log_mode, floor and output_spacing are ignored.
Trajectory solve_ode(const RhsFn& f, const Vector& y0, const IntegratorOptions& opts);

using Polyline = std::vector<Vector>;

/// Polyline approximation of the connecting orbit from `from` to `to` inside
/// their coordinate plane, seeded along the unstable eigendirection of
/// `from`. The polyline starts at from.coordinates and ends at
/// to.coordinates; interior points are at most `spacing` (<= 0.01) apart.
Polyline connection_polyline(const NetworkModel& m, const Equilibrium& from, const Equilibrium& to,
                             double seed_offset = 1e-6, double t_max = 2000.0,
                             double spacing = 0.01);

}  // namespace hetnet
