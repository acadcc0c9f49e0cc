#include "commands.hpp"

#include "scenario.hpp"
#include "svg.hpp"

#include "hetnet/error.hpp"
#include "hetnet/geometry.hpp"
#include "hetnet/indices.hpp"
#include "hetnet/io.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace hetnet::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Failure of one stage of a command, with the exit code it maps to.
struct StageError {
  std::string stage;
  std::string message;
  int exit_code;
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::NoConnection:
    case ErrorCode::NoEvents:
    case ErrorCode::TooFewEpisodes:
    case ErrorCode::TrajectoryTooShort:
    case ErrorCode::SamplingFailed:
    case ErrorCode::AllTrajectoriesFailed:
      return kNumerical;
    default:
      return kUsage;
  }
}

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw StageError{name, e.what(), exit_code_for(e.code())};
  } catch (const std::bad_alloc&) {
    throw StageError{name, "out of memory", kNumerical};
  }
}

/// Files written by one command. Anything written is removed again unless
/// commit() is called.
class OutputSet {
 public:
  OutputSet() = default;
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;
  ~OutputSet() {
    if (committed_) return;
    std::error_code ec;
    for (auto it = files_.rbegin(); it != files_.rend(); ++it) fs::remove(*it, ec);
    for (auto it = dirs_.rbegin(); it != dirs_.rend(); ++it) {
      if (fs::is_empty(*it, ec)) fs::remove(*it, ec);
    }
  }

  void write(const fs::path& path, const std::string& content) {
    make_dirs(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    files_.push_back(path);
    f << content;
    if (!f) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
  }

  void commit() { committed_ = true; }

 private:
  void make_dirs(const fs::path& dir) {
    if (dir.empty() || fs::exists(dir)) return;
    make_dirs(dir.parent_path());
    std::error_code ec;
    if (!fs::create_directory(dir, ec) && ec) {
      throw Error(ErrorCode::IoError, "cannot create '" + dir.string() + "'");
    }
    dirs_.push_back(dir);
  }

  std::vector<fs::path> files_;
  std::vector<fs::path> dirs_;
  bool committed_ = false;
};

std::string fixed4(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string stamp_line(const std::string& hash, const std::string& seed) {
  return "# scenario=" + hash + " seed=" + seed + "\n";
}

std::string trajectory_text(const Trajectory& t, const std::string& stamp) {
  std::ostringstream s;
  s << stamp;
  write_trajectory_csv(s, t);
  return s.str();
}

json parse(const std::string& text) { return json::parse(text); }

/// Indices report for the resolved model; empty for families without
/// closed-form indices.
json indices_report(const ResolvedModel& r) {
  json doc;
  doc["model"] = r.label;
  if (const auto* g = std::get_if<GHParams>(&r.params)) {
    doc["indices"] = parse(indices_json(gh_indices(*g)));
    doc["regime"] = describe(predict_gh_regime(*g));
  } else if (const auto* k = std::get_if<KSParams>(&r.params)) {
    doc["indices"] = parse(indices_json(nu_quantities(*k)));
    doc["regime_report"] = parse(ks_regime_json(predict_ks_regime(*k)));
  }
  json eig = json::array();
  for (int j = 1; j <= r.model.dimension(); ++j) {
    json row;
    row["equilibrium"] = j;
    for (const auto& e : jacobian_eigenvalues_at(r.model, j)) {
      row["eigenvalues"].push_back({{"direction", e.direction}, {"radial", e.radial}, {"value", e.value}});
    }
    eig.push_back(row);
  }
  doc["eigenvalues"] = std::move(eig);
  return doc;
}

std::string indices_text(const ResolvedModel& r) {
  std::ostringstream out;
  out << "model: " << r.label << '\n';
  auto print = [&](const StabilityIndices& idx) {
    for (const auto& [k, v] : idx.rho_values) out << "  " << k << " = " << fixed4(v) << '\n';
    for (const auto& [k, v] : idx.nu_values) {
      out << "  " << k << " = " << fixed4(v) << (v < 0.0 ? "   <-- negative" : "") << '\n';
    }
    for (const auto& [k, flag] : idx.resonance_flags) {
      out << "  resonance " << k << ": " << (flag ? "yes" : "no") << '\n';
    }
  };
  if (const auto* g = std::get_if<GHParams>(&r.params)) {
    print(gh_indices(*g));
    out << "  regime: " << describe(predict_gh_regime(*g)) << '\n';
  } else if (const auto* k = std::get_if<KSParams>(&r.params)) {
    print(nu_quantities(*k));
    const auto rep = predict_ks_regime(*k);
    out << "  switching: " << to_string(rep.switching) << '\n';
    out << "  regime: " << describe(rep.regime);
    if (rep.switching != SwitchDirection::None) out << " (switching " << to_string(rep.switching) << ')';
    out << '\n';
  } else {
    out << "  no closed-form indices for this model\n";
  }
  out << "  eigenvalues at the axis equilibria:\n";
  for (int j = 1; j <= r.model.dimension(); ++j) {
    out << "    xi" << j << ':';
    for (const auto& e : jacobian_eigenvalues_at(r.model, j)) {
      out << ' ' << (e.radial ? "r" : "") << e.direction << '=' << fixed4(e.value);
    }
    out << '\n';
  }
  return out.str();
}

std::string seed_text(const Scenario& s) {
  if (s.sampling) return std::to_string(s.sampling->seed);
  if (s.visibility) return std::to_string(s.visibility->config.rng_seed);
  return "none";
}

struct CommonFlags {
  std::string preset;
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tmax;
  bool log = false;
  bool linear = false;
  std::vector<double> delta;
  std::optional<double> epsilon;
};

Scenario load_from_flags(const CommonFlags& f) {
  if (f.preset.empty() == f.scenario.empty()) {
    throw StageError{"arguments", "give exactly one of --preset or --scenario", kUsage};
  }
  return stage("scenario", [&] {
    return f.scenario.empty() ? scenario_for_preset(f.preset) : load_scenario(f.scenario);
  });
}

void apply_common(Scenario& s, const CommonFlags& f) {
  if (!f.out.empty()) s.output = f.out;
  if (f.log && f.linear) throw StageError{"arguments", "--log and --linear are exclusive", kUsage};
  if (f.log) s.plots.log_scale = true;
  if (f.linear) s.plots.log_scale = false;
  if (f.seed && s.sampling) s.sampling->seed = *f.seed;
}

// ---------------------------------------------------------------- simulate

struct RunOutcome {
  bool ok = false;
  StageError error;
};

void simulate_one(const Scenario& s, const ResolvedModel& r, const Vector& x0, const fs::path& dir,
                  const std::string& hash, OutputSet& files) {
  const std::string stamp = stamp_line(hash, seed_text(s));
  const Trajectory traj = stage("integrate", [&] {
    return integrate_with_equilibrium_events(r.model, x0, s.integrator, s.analysis.eta);
  });
  if (traj.termination != Termination::TimeLimit) {
    throw StageError{"integrate", "integration stopped early (" + to_string(traj.termination) + ") at t = " +
                                      std::to_string(traj.final_time()),
                     kNumerical};
  }
  json report;
  report["initial_condition"] = std::vector<double>(x0.data(), x0.data() + x0.size());
  report["run"] = parse(events_json(traj));
  report["run"].erase("events");

  std::optional<Itinerary> it;
  if (s.analysis.itinerary) {
    it = stage("itinerary", [&] {
      Itinerary raw = extract_itinerary(traj, s.analysis.min_episode, s.name);
      return classify_edges(std::move(raw), traj, r.model, s.analysis.edge_scheme);
    });
    report["visits"] = it->visit_string();
    report["edge_labels"] = it->label_string();
  }
  if (s.analysis.residence_ratios) {
    stage("residence ratios", [&] {
      json loops = json::array();
      for (const auto& l : loop_durations(*it)) {
        loops.push_back({{"episode", l.episode}, {"equilibrium", l.equilibrium}, {"duration", l.duration}});
      }
      report["loops"] = std::move(loops);
      report["residence_ratios"] = residence_ratios(*it);
    });
  }
  std::string pentacle;
  if (s.analysis.projection) {
    pentacle = stage("projection", [&] {
      std::ostringstream p;
      p << stamp;
      write_pentacle_csv(p, traj, s.analysis.transient);
      return p.str();
    });
  }
  bool pentacle_rows = false;
  if (!pentacle.empty()) {
    std::istringstream p(pentacle);
    pentacle_rows = !read_table_csv(p).rows.empty();
    if (!pentacle_rows) report["warnings"].push_back("no samples after analysis.transient; pentacle plot skipped");
  }

  const std::string traj_csv = trajectory_text(traj, stamp);
  stage("write", [&] {
    files.write(dir / "trajectory.csv", traj_csv);
    if (it) {
      std::ostringstream o;
      o << stamp;
      write_itinerary_csv(o, *it);
      files.write(dir / "itinerary.csv", o.str());
    }
    if (!pentacle.empty()) files.write(dir / "pentacle.csv", pentacle);
    files.write(dir / "report.json", report.dump(2) + "\n");
  });
  if (s.plots.enabled) {
    stage("plot", [&] {
      const PlotStamp ps{hash, seed_text(s), "trajectory.csv"};
      std::istringstream t(traj_csv);
      files.write(dir / "plots" / "timeseries.svg", timeseries_svg(read_table_csv(t), s.plots.log_scale, ps));
      if (pentacle_rows) {
        std::istringstream p(pentacle);
        files.write(dir / "plots" / "pentacle.svg",
                    pentacle_svg(read_table_csv(p), {hash, seed_text(s), "pentacle.csv"}));
      }
    });
  }
}

int cmd_simulate(const CommonFlags& f, std::ostream& out, std::ostream& err) {
  Scenario s = load_from_flags(f);
  apply_common(s, f);
  if (f.tmax) s.integrator.t_max = *f.tmax;
  stage("scenario", [&] { s.validate(); });
  const auto hash = scenario_hash(s);
  const ResolvedModel r = stage("model", [&] { return resolve_model(s.model); });

  std::vector<Vector> ics = s.initial_conditions;
  if (s.sampling) {
    ics = stage("sampling", [&] {
      const auto g = build_network_geometry(r.model, r.edges);
      const auto tgt = resolve_target(r, {s.sampling->target, {}});
      return sample_neighborhood(g.subset(tgt.edges), s.sampling->delta, s.sampling->count,
                                 s.sampling->exclusions, s.sampling->seed);
    });
  }
  if (ics.empty()) throw StageError{"scenario", "scenario: missing field 'initial_conditions'", kUsage};

  const fs::path root = s.output;
  OutputSet top;
  stage("write", [&] {
    top.write(root / "scenario.yaml", write_scenario(s));
    if (s.analysis.indices) top.write(root / "indices.json", indices_report(r).dump(2) + "\n");
  });

  int failed = 0;
  std::optional<StageError> first;
  for (std::size_t k = 0; k < ics.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "run-%03zu", k);
    const fs::path dir = ics.size() == 1 ? root : root / name;
    OutputSet files;
    try {
      simulate_one(s, r, ics[k], dir, hash, files);
      files.commit();
      out << dir.string() << ": ok\n";
    } catch (const StageError& e) {
      ++failed;
      if (!first) first = e;
      err << "hetnet simulate: " << dir.string() << ": stage '" << e.stage << "' failed: " << e.message << '\n';
    }
  }
  if (failed == static_cast<int>(ics.size())) return first->exit_code;
  top.commit();
  if (failed > 0) {
    err << "hetnet simulate: " << failed << " of " << ics.size() << " runs failed\n";
    return kPartial;
  }
  return kOk;
}

// ---------------------------------------------------------------- classify

std::string verdict_line(const VisibilityVerdict& v) {
  std::ostringstream o;
  o << v.target_id << ": " << to_string(v.mode);
  if (v.prefix != Prefix::None) o << " (" << to_string(v.prefix) << ')';
  o << "  fractions";
  for (const auto& [d, frac] : v.fraction_per_delta) o << ' ' << d << ':' << fixed4(frac);
  const auto& st = v.stability_modes;
  o << "  stability: lyapunov=" << (st.lyapunov_consistent ? "yes" : "no")
    << " quasi-asymptotic=" << (st.quasi_asymptotic_consistent ? "yes" : "no")
    << " f.a.s.=" << (st.fas_consistent ? "yes" : "no") << " (" << st.note << ')';
  if (v.failures > 0) o << "  failed " << v.failures << '/' << v.trajectories;
  return o.str();
}

int cmd_classify(const CommonFlags& f, const std::vector<std::string>& targets, std::optional<int> samples,
                 std::ostream& out, std::ostream& err) {
  Scenario s = load_from_flags(f);
  apply_common(s, f);
  if (!s.visibility) {
    if (f.scenario.empty()) {
      s.visibility = VisibilitySpec{};
    } else {
      throw StageError{"scenario", "scenario: missing field 'visibility'", kUsage};
    }
  }
  auto& vis = *s.visibility;
  if (!targets.empty()) {
    vis.targets.clear();
    for (const auto& t : targets) vis.targets.push_back({t, {}});
  }
  if (f.seed) vis.config.rng_seed = *f.seed;
  if (f.tmax) vis.config.t_max = *f.tmax;
  if (!f.delta.empty()) vis.config.delta_ladder = f.delta;
  if (f.epsilon) vis.config.epsilon = *f.epsilon;
  if (samples) vis.config.samples_per_delta = *samples;

  const ResolvedModel r = stage("model", [&] { return resolve_model(s.model); });
  if (vis.targets.empty()) {
    for (const auto& t : r.targets) vis.targets.push_back({t.id, {}});
  }
  stage("scenario", [&] { s.validate(); });
  const auto hash = scenario_hash(s);
  std::vector<NamedTarget> resolved;
  for (const auto& t : vis.targets) resolved.push_back(stage("target", [&] { return resolve_target(r, t); }));
  const auto g = stage("geometry", [&] { return build_network_geometry(r.model, r.edges); });

  json doc;
  doc["scenario"] = s.name;
  doc["scenario_hash"] = hash;
  doc["model"] = r.label;
  doc["targets"] = json::array();
  int failed = 0;
  std::optional<StageError> first;
  for (const auto& t : resolved) {
    try {
      const Evidence ev = stage("visibility " + t.id, [&] {
        return gather_evidence(r.model, g, t.edges, vis.config, t.id);
      });
      const VisibilityVerdict v = verdict_from_evidence(ev);
      out << verdict_line(v) << '\n';
      doc["targets"].push_back(parse(verdict_json(v, ev)));
    } catch (const StageError& e) {
      ++failed;
      if (!first) first = e;
      err << "hetnet classify: stage '" << e.stage << "' failed: " << e.message << '\n';
      doc["targets"].push_back({{"target", t.id}, {"error", e.message}});
    }
  }
  if (failed == static_cast<int>(resolved.size())) return first->exit_code;
  OutputSet files;
  stage("write", [&] {
    const fs::path root = s.output;
    files.write(root / "scenario.yaml", write_scenario(s));
    files.write(root / "verdict.json", doc.dump(2) + "\n");
  });
  files.commit();
  if (failed > 0) {
    err << "hetnet classify: " << failed << " of " << resolved.size() << " targets failed\n";
    return kPartial;
  }
  return kOk;
}

// ---------------------------------------------------------------- indices

int cmd_indices(const CommonFlags& f, std::ostream& out) {
  Scenario s = load_from_flags(f);
  const ResolvedModel r = stage("model", [&] { return resolve_model(s.model); });
  out << stage("indices", [&] { return indices_text(r); });
  if (!f.out.empty()) {
    OutputSet files;
    stage("write", [&] { files.write(fs::path(f.out) / "indices.json", indices_report(r).dump(2) + "\n"); });
    files.commit();
  }
  return kOk;
}

// ---------------------------------------------------------------- plot

int cmd_plot(const std::vector<std::string>& inputs, const CommonFlags& f, std::ostream& out) {
  if (inputs.empty()) throw StageError{"arguments", "no input tables", kUsage};
  if (f.log && f.linear) throw StageError{"arguments", "--log and --linear are exclusive", kUsage};
  OutputSet files;
  for (const auto& in : inputs) {
    const fs::path path = in;
    std::string text = stage("read " + in, [&] {
      std::ifstream file(path, std::ios::binary);
      if (!file) throw Error(ErrorCode::IoError, "cannot read '" + in + "'");
      std::stringstream ss;
      ss << file.rdbuf();
      return ss.str();
    });
    PlotStamp ps{"unknown", "unknown", path.filename().string()};
    if (text.rfind("# scenario=", 0) == 0) {
      std::istringstream first(text.substr(0, text.find('\n')));
      std::string tag, hash, seed;
      first >> tag >> hash >> seed;
      if (hash.rfind("scenario=", 0) == 0) ps.scenario_hash = hash.substr(9);
      if (seed.rfind("seed=", 0) == 0) ps.seed = seed.substr(5);
    }
    const Table table = stage("read " + in, [&] {
      std::istringstream ss(text);
      return read_table_csv(ss);
    });
    const fs::path dir = f.out.empty() ? path.parent_path() / "plots" : fs::path(f.out);
    const fs::path target = dir / (path.stem().string() + ".svg");
    stage("plot " + in, [&] {
      const bool is_pentacle = table.columns.size() == 3 && table.columns[1] == "y1";
      files.write(target, is_pentacle ? pentacle_svg(table, ps) : timeseries_svg(table, !f.linear, ps));
    });
    out << target.string() << '\n';
  }
  files.commit();
  return kOk;
}

}  // namespace

std::string presets_listing() {
  std::ostringstream out;
  for (const auto& p : presets()) {
    const auto m = p.model();
    out << p.id;
    for (const auto& a : p.aliases) out << " (alias " << a << ')';
    out << "  [" << to_string(p.family) << ", n = " << m.dimension() << ", t_max = " << p.t_max << "]\n";
    out << "  provenance: " << p.provenance << '\n';
    if (const auto* g = std::get_if<GHParams>(&p.params)) {
      const auto idx = gh_indices(*g);
      out << "  rho_123 = " << fixed4(idx.rho_values.at("rho_123")) << "; "
          << describe(predict_gh_regime(*g)) << '\n';
    } else if (const auto* k = std::get_if<KSParams>(&p.params)) {
      const auto rep = predict_ks_regime(*k);
      out << "  rho_123 = " << fixed4(rep.rho_123) << ", rho_124 = " << fixed4(rep.rho_124)
          << "; predicted regime: " << describe(rep.regime);
      if (rep.switching != SwitchDirection::None) out << " (switching " << to_string(rep.switching) << ')';
      out << '\n';
    }
    out << "  expected: " << p.annotation << '\n';
    out << "  initial condition: (";
    for (Eigen::Index i = 0; i < p.initial_condition.size(); ++i) {
      out << (i ? ", " : "") << p.initial_condition(i);
    }
    out << ")\n  targets:";
    for (const auto& t : p.targets) out << ' ' << t.id;
    out << '\n';
  }
  return out.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and classification of heteroclinic networks", "hetnet"};
  app.require_subcommand(1);
  CommonFlags f;
  std::vector<std::string> targets, inputs;
  std::optional<int> samples;

  auto add_model = [&](CLI::App* c) {
    c->add_option("--preset", f.preset, "Built-in parameter set");
    c->add_option("--scenario", f.scenario, "Scenario file (YAML)");
  };
  auto add_scale = [&](CLI::App* c) {
    c->add_flag("--log", f.log, "Logarithmic ordinate");
    c->add_flag("--linear", f.linear, "Linear ordinate");
  };

  auto* presets_cmd = app.add_subcommand("presets", "List built-in parameter sets");

  auto* simulate = app.add_subcommand("simulate", "Integrate a scenario and write tables and plots");
  add_model(simulate);
  simulate->add_option("--out", f.out, "Output directory");
  simulate->add_option("--seed", f.seed, "Seed for sampled initial conditions");
  simulate->add_option("--tmax", f.tmax, "Integration horizon");
  add_scale(simulate);

  auto* indices = app.add_subcommand("indices", "Stability indices and predicted regime");
  add_model(indices);
  indices->add_option("--out", f.out, "Also write indices.json here");

  auto* classify = app.add_subcommand("classify", "Monte Carlo visibility verdicts");
  add_model(classify);
  classify->add_option("--target", targets, "Target id (repeatable); default all");
  classify->add_option("--out", f.out, "Output directory");
  classify->add_option("--seed", f.seed, "Sampling seed");
  classify->add_option("--tmax", f.tmax, "Horizon per trajectory");
  classify->add_option("--delta", f.delta, "Comma-separated delta ladder")->delimiter(',');
  classify->add_option("--epsilon", f.epsilon, "Closeness threshold");
  classify->add_option("--samples", samples, "Samples per delta");

  auto* plot = app.add_subcommand("plot", "Render CSV tables as SVG");
  plot->add_option("tables", inputs, "trajectory.csv or pentacle.csv files")->required();
  plot->add_option("--out", f.out, "Output directory (default: plots/ next to each table)");
  add_scale(plot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (presets_cmd->parsed()) {
      out << presets_listing();
      return kOk;
    }
    if (simulate->parsed()) return cmd_simulate(f, out, err);
    if (indices->parsed()) return cmd_indices(f, out);
    if (classify->parsed()) return cmd_classify(f, targets, samples, out, err);
    if (plot->parsed()) return cmd_plot(inputs, f, out);
  } catch (const StageError& e) {
    err << "hetnet: stage '" << e.stage << "' failed: " << e.message << '\n';
    return e.exit_code;
  } catch (const std::exception& e) {
    err << "hetnet: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace hetnet::cli
