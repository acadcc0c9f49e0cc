#include "hetnet/io.hpp"

#include "hetnet/error.hpp"
#include "hetnet/geometry.hpp"

#include "json.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace hetnet {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && s[b] == ' ') ++b;
  return s.substr(b);
}

double parse_double(const std::string& cell, std::size_t line) {
  const std::string t = trim(cell);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ": not a number: '" + t + "'");
  }
  return v;
}

json vec_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json fractions_json(const std::vector<double>& ladder, const std::vector<double>& fractions) {
  json a = json::array();
  for (std::size_t k = 0; k < ladder.size() && k < fractions.size(); ++k) {
    a.push_back({{"delta", ladder[k]}, {"fraction", fractions[k]}});
  }
  return a;
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] == name) return k;
  }
  throw Error(ErrorCode::ParseError, "missing column '" + name + "'");
}

Table read_table_csv(std::istream& in) {
  Table t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (t.columns.empty()) {
      for (auto& c : split(line)) t.columns.push_back(trim(c));
      continue;
    }
    auto cells = split(line);
    if (cells.size() != t.columns.size()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected " +
                                             std::to_string(t.columns.size()) + " fields, got " +
                                             std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_double(c, lineno));
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) throw Error(ErrorCode::ParseError, "empty table");
  return t;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const int n = traj.dimension();
  out << "t";
  for (int j = 1; j <= n; ++j) out << ",x" << j;
  out << '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out << num(traj.times[k]);
    for (int j = 0; j < n; ++j) out << ',' << num(traj.states[k](j));
    out << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& in) {
  const Table t = read_table_csv(in);
  if (t.columns.size() < 2 || t.columns[0] != "t") {
    throw Error(ErrorCode::ParseError, "trajectory table needs columns t,x1,...");
  }
  for (std::size_t j = 1; j < t.columns.size(); ++j) {
    if (t.columns[j] != "x" + std::to_string(j)) {
      throw Error(ErrorCode::ParseError, "unexpected column '" + t.columns[j] + "'");
    }
  }
  Trajectory traj;
  const auto n = static_cast<Eigen::Index>(t.columns.size() - 1);
  for (const auto& row : t.rows) {
    traj.times.push_back(row[0]);
    Vector x(n);
    for (Eigen::Index j = 0; j < n; ++j) x(j) = row[static_cast<std::size_t>(j) + 1];
    traj.states.push_back(std::move(x));
  }
  return traj;
}

void write_itinerary_csv(std::ostream& out, const Itinerary& it) {
  out << "episode_index,equilibrium,t_enter,t_exit,edge_label\n";
  for (std::size_t k = 0; k < it.episodes.size(); ++k) {
    const auto& e = it.episodes[k];
    out << k << ',' << e.equilibrium << ',' << num(e.t_enter) << ',' << num(e.t_exit) << ',';
    if (k < it.edge_labels.size()) out << to_string(it.edge_labels[k]);
    out << '\n';
  }
}

Itinerary read_itinerary_csv(std::istream& in) {
  Itinerary it;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "episode_index,equilibrium,t_enter,t_exit,edge_label") {
        throw Error(ErrorCode::ParseError, "unexpected itinerary header");
      }
      header = true;
      continue;
    }
    auto cells = split(line);
    if (cells.size() != 5) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected 5 fields");
    }
    Episode e;
    e.equilibrium = static_cast<int>(parse_double(cells[1], lineno));
    e.t_enter = parse_double(cells[2], lineno);
    e.t_exit = parse_double(cells[3], lineno);
    it.episodes.push_back(e);
    const std::string label = trim(cells[4]);
    if (label.empty()) continue;
    if (label == "A") it.edge_labels.push_back(EdgeLabel::A);
    else if (label == "B") it.edge_labels.push_back(EdgeLabel::B);
    else if (label == "I") it.edge_labels.push_back(EdgeLabel::Interior);
    else if (label == "O") it.edge_labels.push_back(EdgeLabel::Other);
    else throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": bad edge label");
  }
  if (!header) throw Error(ErrorCode::ParseError, "empty itinerary table");
  return it;
}

void write_pentacle_csv(std::ostream& out, const Trajectory& traj, double t_from) {
  out << "t,y1,y2\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    if (traj.times[k] < t_from) continue;
    const auto y = pentacle_project(traj.states[k]);
    out << num(traj.times[k]) << ',' << num(y[0]) << ',' << num(y[1]) << '\n';
  }
}

std::string events_json(const Trajectory& traj) {
  json doc;
  doc["termination"] = to_string(traj.termination);
  doc["final_time"] = traj.final_time();
  doc["tolerance_used"] = traj.tolerance_used;
  doc["accepted_steps"] = traj.accepted_steps;
  doc["rejected_steps"] = traj.rejected_steps;
  json events = json::array();
  for (const auto& e : traj.events) {
    events.push_back({{"kind", to_string(e.kind)}, {"t", e.t}, {"equilibrium", e.equilibrium}});
  }
  doc["events"] = std::move(events);
  return doc.dump(2) + "\n";
}

std::string indices_json(const StabilityIndices& idx) {
  json doc;
  doc["rho"] = idx.rho_values;
  doc["nu"] = idx.nu_values;
  doc["resonance"] = idx.resonance_flags;
  return doc.dump(2) + "\n";
}

std::string ks_regime_json(const KSRegimeReport& r) {
  json doc;
  doc["rho_123"] = r.rho_123;
  doc["rho_124"] = r.rho_124;
  doc["resonant_123"] = r.resonant_123;
  doc["resonant_124"] = r.resonant_124;
  doc["nu"] = r.nu;
  json signs;
  for (const auto& [k, v] : r.nu) signs[k] = v > 0.0 ? "+" : (v < 0.0 ? "-" : "0");
  doc["nu_signs"] = std::move(signs);
  doc["switching"] = to_string(r.switching);
  doc["regime"] = to_string(r.regime);
  doc["description"] = describe(r.regime);
  return doc.dump(2) + "\n";
}

std::string verdict_json(const VisibilityVerdict& v, const Evidence& ev) {
  const auto& cfg = ev.config;
  json doc;
  doc["target"] = v.target_id;
  doc["mode"] = to_string(v.mode);
  doc["prefix"] = to_string(v.prefix);
  std::vector<double> reported;
  for (double d : cfg.delta_ladder) reported.push_back(v.fraction_per_delta.at(d));
  doc["fractions"] = fractions_json(cfg.delta_ladder, reported);
  json modes;
  for (const auto& [mode, r] : v.per_mode) {
    modes[to_string(mode)] = {{"prefix", to_string(r.prefix)},
                              {"fractions", fractions_json(cfg.delta_ladder, r.fractions)}};
  }
  doc["modes"] = std::move(modes);
  const auto& s = v.stability_modes;
  doc["stability"] = {
      {"lyapunov_consistent", s.lyapunov_consistent},
      {"quasi_asymptotic_consistent", s.quasi_asymptotic_consistent},
      {"fas_consistent", s.fas_consistent},
      {"stayed", fractions_json(cfg.delta_ladder, s.stayed_fractions)},
      {"converged", fractions_json(cfg.delta_ladder, s.converged_fractions)},
      {"stayed_and_converged", fractions_json(cfg.delta_ladder, s.stayed_and_converged_fractions)},
      {"note", s.note},
  };
  doc["seed"] = cfg.rng_seed;
  doc["horizon"] = cfg.t_max;
  doc["transient"] = cfg.transient_T;
  doc["epsilon"] = cfg.epsilon;
  doc["samples_per_delta"] = cfg.samples_per_delta;
  doc["recurrence_count"] = cfg.recurrence_count;
  doc["exclusions"] = to_string(cfg.exclusions);
  doc["tolerances"] = {{"rel_tol", cfg.rel_tol}, {"abs_tol", cfg.abs_tol}};
  doc["trajectories"] = v.trajectories;
  doc["failures"] = v.failures;
  json samples = json::array();
  for (const auto& rec : ev.samples) {
    json e = {{"delta", rec.delta}, {"index", rec.index}, {"x0", vec_json(rec.x0)}};
    if (rec.failed) {
      e["error"] = rec.error;
    } else {
      const auto& t = rec.verdict;
      const auto f = mode_flags(t);
      e["covered"] = t.covered_elements.size();
      e["elements"] = t.element_count;
      e["omega"] = t.omega_estimate.size();
      e["stayed"] = t.stayed_within_epsilon;
      e["returned"] = t.returned_within_epsilon;
      e["converged"] = t.converged;
      e["escaped"] = t.escaped;
      e["detoured"] = t.detoured;
      e["final_distance"] = t.final_distance;
      e["max_distance"] = t.max_distance;
      e["modes"] = {{"A", f.asymptotic}, {"L", f.lyapunov}, {"Q", f.quasi}, {"V", f.visible}};
    }
    samples.push_back(std::move(e));
  }
  doc["samples"] = std::move(samples);
  return doc.dump(2) + "\n";
}

}  // namespace hetnet
