#pragma once

#include "hetnet/integrator.hpp"

#include <string>
#include <vector>

namespace hetnet {

inline constexpr double kDefaultEta = 0.2;
inline constexpr double kDefaultMinEpisode = 0.5;
inline constexpr double kDefaultInteriorThreshold = 0.05;

enum class EdgeLabel { A, B, Interior, Other };

std::string to_string(EdgeLabel l);

struct Episode {
  int equilibrium = 0;  // signed axis id
  double t_enter = 0.0;
  double t_exit = 0.0;
  /// The run ended while inside the neighbourhood.
  bool open = false;
};

struct Itinerary {
  std::vector<Episode> episodes;
  /// One label per consecutive pair of episodes, filled by classify_edges.
  std::vector<EdgeLabel> edge_labels;
  std::string source_id;

  /// Equilibrium ids as a compact string, e.g. "1231".
  std::string visit_string() const;
  /// Edge labels as a string of A/B/I/O.
  std::string label_string() const;
};

/// Pairs Enter/Exit events into episodes, dropping grazes shorter than
/// `min_duration`.
Itinerary extract_itinerary(const Trajectory& traj, double min_duration = kDefaultMinEpisode,
                            std::string source_id = {});

enum class EdgeScheme { Generic, RPSSL };

/// Labels each transition. Under the RPSSL scheme j -> j+1 is A and
/// j -> j-2 is B (mod 5). A transition during which at least three
/// coordinates simultaneously exceed `interior_threshold` is Interior.
Itinerary classify_edges(Itinerary it, const Trajectory& traj, const NetworkModel& m,
                         EdgeScheme scheme = EdgeScheme::RPSSL,
                         double interior_threshold = kDefaultInteriorThreshold);

/// Duration of each full loop: time from entering an equilibrium to the
/// next entry into the same equilibrium. Indexed by starting episode;
/// episodes without a later return are omitted.
struct Loop {
  std::size_t episode = 0;
  int equilibrium = 0;
  double duration = 0.0;
};

std::vector<Loop> loop_durations(const Itinerary& it);

/// Ratio of successive loop durations for the same equilibrium, in order of
/// the later loop.
std::vector<double> residence_ratios(const Itinerary& it);

/// Smallest period p <= max_period such that seq[i] == seq[i+p] for all i,
/// or 0 when there is none.
std::size_t smallest_period(const std::string& seq, std::size_t max_period);

}  // namespace hetnet
