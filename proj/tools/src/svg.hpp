#pragma once

#include "hetnet/io.hpp"

#include <string>

namespace hetnet::cli {

/// Provenance stamped into every plot.
struct PlotStamp {
  std::string scenario_hash;
  std::string seed;
  std::string source;
};

/// Time series of every x column in a trajectory table. With log_scale the
/// ordinate is log10, clamped below at 1e-16.
std::string timeseries_svg(const Table& traj, bool log_scale, const PlotStamp& stamp);

/// Path of a `t,y1,y2` table over the pentagon of axis equilibria.
std::string pentacle_svg(const Table& pentacle, const PlotStamp& stamp);

}  // namespace hetnet::cli
