#pragma once

#include "hetnet/geometry.hpp"
#include "hetnet/integrator.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hetnet {

enum class Exclusions { None, InvariantSubspaces };

std::string to_string(Exclusions e);

struct VisibilityConfig {
  std::vector<double> delta_ladder{1e-2, 1e-3, 1e-4};
  double epsilon = 0.05;
  int samples_per_delta = 200;
  double t_max = 5000.0;
  double transient_T = 500.0;
  int recurrence_count = 2;
  Exclusions exclusions = Exclusions::InvariantSubspaces;
  std::uint64_t rng_seed = 1;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// Worker threads; 0 picks HETNET_THREADS or the hardware concurrency.
  int threads = 0;

  void validate() const;
};

/// Deterministic generator: splitmix64-seeded xoshiro256**.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform();
  double normal();

 private:
  std::uint64_t s_[4];
};

/// K points with 0 < d(x, g) < delta. Offsets have log-uniform magnitude in
/// [delta/100, delta] and uniform direction around a base point chosen
/// uniformly by arc length on g. With InvariantSubspaces every coordinate
/// is strictly positive.
std::vector<Vector> sample_neighborhood(const NetworkGeometry& g, double delta, int K,
                                        Exclusions exclusions, std::uint64_t seed);

struct TrajectoryVerdict {
  /// Indices into NetworkGeometry::elements(epsilon / 2) approached within
  /// epsilon at least recurrence_count times after the transient.
  std::vector<int> covered_elements;
  int element_count = 0;
  bool covered_all = false;
  bool stayed_within_epsilon = false;
  bool returned_within_epsilon = false;
  bool converged = false;
  bool escaped = false;
  /// Came within epsilon of a network equilibrium that is not part of X.
  bool detoured = false;
  /// Elements approached within epsilon during the final 20% of the run.
  std::vector<int> omega_estimate;
  bool omega_is_target = false;
  double final_distance = 0.0;
  double max_distance = 0.0;
};

/// `target` is the geometry of X (see NetworkGeometry::subset).
TrajectoryVerdict classify_trajectory(const Trajectory& traj, const NetworkGeometry& target,
                                      const VisibilityConfig& cfg);

/// As above, with X given as edges of `g`; also sets `detoured`.
TrajectoryVerdict classify_trajectory(const Trajectory& traj, const NetworkGeometry& g,
                                      const std::vector<Edge>& target, const VisibilityConfig& cfg);

enum class VisibilityMode { AsymptoticallyVisible, LyapunovVisible, QuasiVisible, Visible, NotVisible };
enum class Prefix { Plain, Almost, Essentially, Fragmentarily, None };

std::string to_string(VisibilityMode m);
std::string to_string(Prefix p);

/// Per-trajectory mode flags. AsymptoticallyVisible implies LyapunovVisible
/// implies Visible.
struct ModeFlags {
  bool asymptotic = false;
  bool lyapunov = false;
  bool quasi = false;
  bool visible = false;
};

ModeFlags mode_flags(const TrajectoryVerdict& v);

/// Prefix for a fraction sequence ordered like the (decreasing) delta ladder.
Prefix prefix_from_fractions(const std::vector<double>& fractions, Exclusions exclusions);

struct SampleRecord {
  double delta = 0.0;
  int index = 0;
  Vector x0;
  bool failed = false;
  std::string error;
  TrajectoryVerdict verdict;
};

/// Raw Monte Carlo evidence shared by visibility_verdict and stability_report.
struct Evidence {
  std::string target_id;
  VisibilityConfig config;
  std::vector<SampleRecord> samples;

  int failures() const;
};

Evidence gather_evidence(const NetworkModel& m, const NetworkGeometry& g,
                         const std::vector<Edge>& target, const VisibilityConfig& cfg,
                         std::string target_id = {});

struct ModeResult {
  VisibilityMode mode = VisibilityMode::NotVisible;
  Prefix prefix = Prefix::None;
  std::vector<double> fractions;
};

struct StabilityFlags {
  bool lyapunov_consistent = false;
  bool quasi_asymptotic_consistent = false;
  bool fas_consistent = false;
  std::vector<double> stayed_fractions;
  std::vector<double> converged_fractions;
  std::vector<double> stayed_and_converged_fractions;
  std::string note = "empirical, not a proof";
};

struct VisibilityVerdict {
  std::string target_id;
  VisibilityMode mode = VisibilityMode::NotVisible;
  Prefix prefix = Prefix::None;
  /// Fractions of the reported mode, one per delta.
  std::map<double, double> fraction_per_delta;
  /// Prefix and fractions for each of the four modes.
  std::map<VisibilityMode, ModeResult> per_mode;
  StabilityFlags stability_modes;
  int trajectories = 0;
  int failures = 0;
};

StabilityFlags stability_from_evidence(const Evidence& ev);
VisibilityVerdict verdict_from_evidence(const Evidence& ev);

VisibilityVerdict visibility_verdict(const NetworkModel& m, const NetworkGeometry& g,
                                     const std::vector<Edge>& target, const VisibilityConfig& cfg,
                                     std::string target_id = {});

StabilityFlags stability_report(const NetworkModel& m, const NetworkGeometry& g,
                                const std::vector<Edge>& target, const VisibilityConfig& cfg);

/// Worker count from HETNET_THREADS, else hardware concurrency (at least 1).
int default_thread_count();

}  // namespace hetnet
