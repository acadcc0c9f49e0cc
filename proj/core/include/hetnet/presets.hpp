#pragma once

#include "hetnet/models.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hetnet {

enum class Family { GuckenheimerHolmes, KirkSilber, RPSSL };

std::string to_string(Family f);

/// Directed edge between two equilibria, identified by signed axis ids.
using Edge = std::pair<int, int>;

/// A named subset of a network (a cycle or the whole network).
struct NamedTarget {
  std::string id;
  std::vector<Edge> edges;
};

struct Preset {
  std::string id;
  std::vector<std::string> aliases;
  Family family;
  std::variant<GHParams, KSParams, RPSSLParams> params;
  std::string provenance;
  /// Expected behaviour of a typical trajectory, e.g. "AABBB".
  std::string annotation;
  /// Repo-chosen initial condition reproducing the regime signature.
  Vector initial_condition;
  double t_max = 500.0;
  std::vector<Edge> edges;
  std::vector<NamedTarget> targets;

  NetworkModel model() const;
};

const std::vector<Preset>& presets();

/// Looks up a preset by id or alias. Throws Error(UnknownPreset).
const Preset& find_preset(const std::string& id);

const NamedTarget& find_target(const Preset& p, const std::string& target_id);

/// Published parameter values.
GHParams gh_table_params();
/// Same as gh_table_params() with c13 lowered to 0.75 so rho_123 = 1.
GHParams gh_resonant_params();
/// Rows 'a' to 'd' of the published Kirk-Silber examples, with the
/// transverse rates read subscript-preserving: t34 := c34, t43 := c43.
KSParams ks_table_params(char row);
/// Same rows with the swapped reading t34 := c43, t43 := c34.
KSParams ks_table_params_swapped(char row);
RPSSLParams rpssl_table_params(char row);

std::vector<Edge> gh_edges();
std::vector<Edge> ks_edges();
std::vector<Edge> rpssl_edges();

}  // namespace hetnet
