#include "hetnet/presets.hpp"

#include "hetnet/error.hpp"

#include <algorithm>

namespace hetnet {

std::string to_string(Family f) {
  switch (f) {
    case Family::GuckenheimerHolmes: return "guckenheimer-holmes";
    case Family::KirkSilber: return "kirk-silber";
    case Family::RPSSL: return "rpssl";
  }
  return "unknown";
}

GHParams gh_table_params() {
  GHParams p;
  p.e12 = 0.9;
  p.c13 = 1.0;
  p.e23 = 1.5;
  p.c21 = 0.9;
  p.e31 = 0.6;
  p.c32 = 1.2;
  return p;
}

GHParams gh_resonant_params() {
  GHParams p = gh_table_params();
  p.c13 = 0.75;
  return p;
}

namespace {

struct KSRow {
  double e12, c13, c14, c21, e23, e24, e31, c32, c34, e41, c42, c43;
};

KSRow ks_row(char row) {
  switch (row) {
    case 'a': return {0.4, 1.5, 1.3, 1.3, 1.9, 1.8, 1.9, 0.8, 0.4, 1.8, 0.8, 1.2};
    case 'b': return {0.7, 0.5, 0.9, 1.6, 0.4, 1.9, 1.4, 0.6, 0.7, 1.9, 2.1, 0.8};
    case 'c': return {1.3, 1.7, 0.7, 1.2, 1.0, 0.5, 2.0, 1.4, 0.5, 0.646, 0.5, 0.7};
    case 'd': return {0.3, 1.1, 0.3, 0.3, 0.9, 0.6, 1.5, 1.5, 0.2, 0.4, 0.8, 0.9};
    default: break;
  }
  throw Error(ErrorCode::UnknownPreset, std::string("no Kirk-Silber row '") + row + "'");
}

KSParams from_row(const KSRow& r, bool swapped) {
  KSParams p;
  p.e12 = r.e12;
  p.c13 = r.c13;
  p.c14 = r.c14;
  p.c21 = r.c21;
  p.e23 = r.e23;
  p.e24 = r.e24;
  p.e31 = r.e31;
  p.c32 = r.c32;
  p.e41 = r.e41;
  p.c42 = r.c42;
  p.t34 = swapped ? r.c43 : r.c34;
  p.t43 = swapped ? r.c34 : r.c43;
  return p;
}

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

std::vector<Preset> build_presets() {
  std::vector<Preset> out;

  const std::vector<NamedTarget> gh_targets = {{"cycle123", gh_edges()}};
  {
    Preset p;
    p.id = "gh";
    p.family = Family::GuckenheimerHolmes;
    p.params = gh_table_params();
    p.provenance = "published Guckenheimer-Holmes example parameters";
    p.annotation = "rho_123 = 4/3: attracting cycle xi1-xi2-xi3";
    p.initial_condition = vec({0.7, 0.1, 0.05});
    p.t_max = 500.0;
    p.edges = gh_edges();
    p.targets = gh_targets;
    out.push_back(p);
  }
  {
    Preset p;
    p.id = "gh-resonant";
    p.family = Family::GuckenheimerHolmes;
    p.params = gh_resonant_params();
    p.provenance = "published Guckenheimer-Holmes parameters with c13 = 0.75 (rho_123 = 1)";
    p.annotation = "resonance: family of periodic orbits near the cycle";
    p.initial_condition = vec({0.95, 0.05, 0.02});
    p.t_max = 500.0;
    p.edges = gh_edges();
    p.targets = gh_targets;
    out.push_back(p);
  }

  const std::vector<NamedTarget> ks_targets = {
      {"cycle123", {{1, 2}, {2, 3}, {3, 1}}},
      {"cycle124", {{1, 2}, {2, 4}, {4, 1}}},
      {"network", ks_edges()},
  };
  struct KSMeta {
    char row;
    const char* note;
    Vector ic;
    double t_max;
  };
  const KSMeta ks_meta[] = {
      {'a', "not at resonance, no switching", vec({0.05, 0.9, 0.05, 0.01}), 2000.0},
      {'b', "not at resonance, switching 3->4", vec({0.1, 0.9, 0.05, 1e-12}), 2000.0},
      {'c', "at resonance (rho_124 = 1), no switching", vec({0.05, 0.9, 1e-3, 0.05}), 2000.0},
      {'d', "at resonance (rho_124 = 1), switching 3->4", vec({1e-4, 0.999, 1e-3, 1e-30}), 3000.0},
  };
  for (const auto& meta : ks_meta) {
    Preset p;
    p.id = std::string("ks-") + meta.row;
    p.family = Family::KirkSilber;
    p.params = ks_table_params(meta.row);
    p.provenance = std::string("published Kirk-Silber example (") + meta.row +
                   "), t34 := c34, t43 := c43";
    p.annotation = meta.note;
    p.initial_condition = meta.ic;
    p.t_max = meta.t_max;
    p.edges = ks_edges();
    p.targets = ks_targets;
    out.push_back(p);
  }

  std::vector<NamedTarget> rpssl_targets = {
      {"a-cycle", {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}}},
      {"network", rpssl_edges()},
  };
  // The five three-equilibrium cycles j -> j+1 -> j+2 -> j.
  for (int j = 1; j <= 5; ++j) {
    const int a = j, b = j % 5 + 1, c = (j + 1) % 5 + 1;
    rpssl_targets.push_back({"aab-" + std::to_string(a) + std::to_string(b) + std::to_string(c),
                             {{a, b}, {b, c}, {c, a}}});
  }
  struct RPMeta {
    char row;
    const char* alias;
    const char* note;
    Vector ic;
  };
  const RPMeta rp_meta[] = {
      {'a', "rpssl-acycle", "A-cycle AAAAA", vec({0.9, 0.1, 0.05, 0.02, 0.01})},
      {'b', "rpssl-aab", "AAB three-equilibrium cycle", vec({0.9, 0.1, 0.05, 0.02, 0.01})},
      {'c', "rpssl-aabbb", "AABBB omnicycle", vec({0.9, 0.01, 0.1, 0.01, 0.01})},
      {'d', "rpssl-aperiodic", "aperiodic A/B switching with interior excursions",
       vec({0.4, 0.3, 0.2, 0.1, 0.05})},
  };
  for (const auto& meta : rp_meta) {
    Preset p;
    p.id = std::string("rpssl-") + meta.row;
    p.aliases = {meta.alias};
    p.family = Family::RPSSL;
    p.params = rpssl_table_params(meta.row);
    p.provenance = std::string("published Rock-Paper-Scissors-Spock-Lizard example (") +
                   meta.row + ")";
    p.annotation = meta.note;
    p.initial_condition = meta.ic;
    p.t_max = 5000.0;
    p.edges = rpssl_edges();
    p.targets = rpssl_targets;
    out.push_back(p);
  }
  return out;
}

}  // namespace

KSParams ks_table_params(char row) { return from_row(ks_row(row), false); }
KSParams ks_table_params_swapped(char row) { return from_row(ks_row(row), true); }

RPSSLParams rpssl_table_params(char row) {
  switch (row) {
    case 'a': return {1.30, 1.00, 1.50, 0.80};
    case 'b': return {1.10, 1.00, 2.70, 0.80};
    case 'c': return {1.10, 1.00, 1.80, 0.80};
    case 'd': return {1.02, 1.00, 1.25, 0.80};
    default: break;
  }
  throw Error(ErrorCode::UnknownPreset, std::string("no RPSSL row '") + row + "'");
}

std::vector<Edge> gh_edges() { return {{1, 2}, {2, 3}, {3, 1}}; }
std::vector<Edge> ks_edges() { return {{1, 2}, {2, 3}, {3, 1}, {2, 4}, {4, 1}}; }

std::vector<Edge> rpssl_edges() {
  std::vector<Edge> out;
  for (int j = 1; j <= 5; ++j) out.push_back({j, j % 5 + 1});              // A
  for (int j = 1; j <= 5; ++j) out.push_back({j, (j + 2) % 5 + 1});        // B: j -> j-2
  return out;
}

NetworkModel Preset::model() const {
  return std::visit(
      [](const auto& p) -> NetworkModel {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GHParams>) {
          return make_gh_model(p);
        } else if constexpr (std::is_same_v<T, KSParams>) {
          return make_ks_model(p);
        } else {
          return make_rpssl_model(p);
        }
      },
      params);
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build_presets();
  return all;
}

const Preset& find_preset(const std::string& id) {
  for (const auto& p : presets()) {
    if (p.id == id) return p;
    if (std::find(p.aliases.begin(), p.aliases.end(), id) != p.aliases.end()) return p;
  }
  throw Error(ErrorCode::UnknownPreset, "unknown preset '" + id + "'");
}

const NamedTarget& find_target(const Preset& p, const std::string& target_id) {
  for (const auto& t : p.targets) {
    if (t.id == target_id) return t;
  }
  throw Error(ErrorCode::UnknownTarget,
              "preset '" + p.id + "' has no target '" + target_id + "'");
}

}  // namespace hetnet
