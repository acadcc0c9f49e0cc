#pragma once

#include "hetnet/indices.hpp"
#include "hetnet/integrator.hpp"
#include "hetnet/itinerary.hpp"
#include "hetnet/visibility.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hetnet {

/// Plain numeric CSV table with a header row.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; throws ParseError when absent.
  std::size_t column(const std::string& name) const;
};

Table read_table_csv(std::istream& in);

/// Header `t,x1,...,xn`, 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
/// Reads times and states back; events are not part of the table.
Trajectory read_trajectory_csv(std::istream& in);

/// Header `episode_index,equilibrium,t_enter,t_exit,edge_label`. The label
/// on row k is the edge leaving episode k (empty on the last row).
void write_itinerary_csv(std::ostream& out, const Itinerary& it);
Itinerary read_itinerary_csv(std::istream& in);

/// Header `t,y1,y2`; rows with t < t_from are skipped.
void write_pentacle_csv(std::ostream& out, const Trajectory& traj, double t_from = 0.0);

/// JSON documents, pretty-printed with two-space indentation.
std::string events_json(const Trajectory& traj);
std::string indices_json(const StabilityIndices& idx);
std::string ks_regime_json(const KSRegimeReport& r);
std::string verdict_json(const VisibilityVerdict& v, const Evidence& ev);

}  // namespace hetnet
