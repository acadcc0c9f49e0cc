#pragma once

#include "hetnet/integrator.hpp"
#include "hetnet/itinerary.hpp"
#include "hetnet/presets.hpp"
#include "hetnet/visibility.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hetnet::cli {

/// Where the vector field comes from: a preset id, a family with explicit
/// parameters, or an inline coefficient matrix.
struct ModelSpec {
  std::string preset;
  std::string family;  // "gh", "ks" or "rpssl" when params are given
  std::map<std::string, double> params;
  Matrix matrix;       // inline coefficients a(k, j)
  Representation representation = Representation::EquivariantCubic;
  bool orthant = true;
  /// Network edges for an inline matrix (signed axis ids).
  std::vector<Edge> edges;

  bool operator==(const ModelSpec& o) const;
};

/// Initial conditions drawn from a neighbourhood of a target.
struct SamplingSpec {
  std::string target = "network";
  double delta = 1e-3;
  int count = 1;
  std::uint64_t seed = 1;
  Exclusions exclusions = Exclusions::InvariantSubspaces;

  bool operator==(const SamplingSpec& o) const = default;
};

struct AnalysisSpec {
  bool itinerary = true;
  bool residence_ratios = true;
  bool projection = false;
  bool indices = true;
  double eta = 0.2;
  double min_episode = 0.5;
  /// Pentacle rows before this time are dropped.
  double transient = 0.0;
  EdgeScheme edge_scheme = EdgeScheme::Generic;

  bool operator==(const AnalysisSpec& o) const = default;
};

struct PlotSpec {
  bool enabled = true;
  bool log_scale = true;

  bool operator==(const PlotSpec& o) const = default;
};

/// A visibility target: a preset target name, or explicit edges.
struct TargetSpec {
  std::string id;
  std::vector<Edge> edges;  // empty: look `id` up in the preset

  bool operator==(const TargetSpec& o) const = default;
};

struct VisibilitySpec {
  std::vector<TargetSpec> targets;
  VisibilityConfig config;

  bool operator==(const VisibilitySpec& o) const;
};

struct Scenario {
  std::string name = "scenario";
  ModelSpec model;
  std::vector<Vector> initial_conditions;
  std::optional<SamplingSpec> sampling;
  IntegratorOptions integrator;
  AnalysisSpec analysis;
  PlotSpec plots;
  std::optional<VisibilitySpec> visibility;
  std::string output = "runs/scenario";

  bool operator==(const Scenario& o) const;

  /// Checks field ranges and that at least one request is present.
  /// Throws Error(ParseError) naming the offending field.
  void validate() const;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
std::string write_scenario(const Scenario& s);

/// Scenario for a preset with its documented initial condition and all
/// analyses switched on. Visibility is left unset.
Scenario scenario_for_preset(const std::string& preset_id);

/// FNV-1a over the canonical text, output directory excluded. Hex string.
std::string scenario_hash(const Scenario& s);

/// Model, network edges and named targets after resolving a ModelSpec.
struct ResolvedModel {
  NetworkModel model;
  std::vector<Edge> edges;
  std::vector<NamedTarget> targets;
  std::optional<Family> family;
  std::variant<std::monostate, GHParams, KSParams, RPSSLParams> params;
  std::string label;
};

ResolvedModel resolve_model(const ModelSpec& spec);

/// Edges of a target, looked up among the resolved targets when not inline.
NamedTarget resolve_target(const ResolvedModel& m, const TargetSpec& t);

}  // namespace hetnet::cli
