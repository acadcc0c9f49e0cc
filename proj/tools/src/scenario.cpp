#include "scenario.hpp"

#include "hetnet/error.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <sstream>

namespace hetnet::cli {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ParseError, "scenario: " + msg); }

[[noreturn]] void missing(const std::string& field) { fail("missing field '" + field + "'"); }

const std::vector<std::string>& param_keys(const std::string& family) {
  static const std::vector<std::string> gh = {"c21", "c32", "c13", "e12", "e23", "e31"};
  static const std::vector<std::string> ks = {"e12", "c13", "c14", "c21", "e23", "e24",
                                              "e31", "c32", "t43", "e41", "c42", "t34"};
  static const std::vector<std::string> rp = {"cA", "eA", "cB", "eB"};
  if (family == "gh") return gh;
  if (family == "ks") return ks;
  if (family == "rpssl") return rp;
  fail("model.family must be gh, ks or rpssl, got '" + family + "'");
}

template <class T>
T get(const YAML::Node& n, const std::string& field) {
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    fail("field '" + field + "' has the wrong type");
  }
}

template <class T>
void read(const YAML::Node& parent, const char* key, const std::string& path, T& out) {
  const YAML::Node n = parent[key];
  if (n) out = get<T>(n, path + key);
}

void check_keys(const YAML::Node& map, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!map.IsMap()) fail("field '" + path + "' must be a mapping");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    bool ok = false;
    for (const char* a : allowed) ok |= key == a;
    if (!ok) fail("unknown field '" + (path.empty() ? key : path + "." + key) + "'");
  }
}

Vector read_vector(const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence()) fail("field '" + field + "' must be a list of numbers");
  Vector v(static_cast<Eigen::Index>(n.size()));
  for (std::size_t k = 0; k < n.size(); ++k) v(static_cast<Eigen::Index>(k)) = get<double>(n[k], field);
  return v;
}

std::vector<Edge> read_edges(const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence()) fail("field '" + field + "' must be a list of [from, to] pairs");
  std::vector<Edge> out;
  for (const auto& e : n) {
    if (!e.IsSequence() || e.size() != 2) fail("field '" + field + "' must hold [from, to] pairs");
    out.push_back({get<int>(e[0], field), get<int>(e[1], field)});
  }
  return out;
}

Exclusions read_exclusions(const YAML::Node& n, const std::string& field) {
  const auto s = get<std::string>(n, field);
  if (s == "none") return Exclusions::None;
  if (s == "invariant-subspaces") return Exclusions::InvariantSubspaces;
  fail("field '" + field + "' must be none or invariant-subspaces");
}

std::string exclusions_name(Exclusions e) {
  return e == Exclusions::None ? "none" : "invariant-subspaces";
}

ModelSpec read_model(const YAML::Node& n) {
  check_keys(n, "model", {"preset", "family", "params", "matrix", "edges", "representation", "orthant"});
  ModelSpec m;
  read(n, "preset", "model.", m.preset);
  read(n, "family", "model.", m.family);
  if (n["representation"]) {
    const auto r = get<std::string>(n["representation"], "model.representation");
    if (r == "cubic") m.representation = Representation::EquivariantCubic;
    else if (r == "lotka-volterra") m.representation = Representation::LotkaVolterra;
    else fail("field 'model.representation' must be cubic or lotka-volterra");
  }
  read(n, "orthant", "model.", m.orthant);
  const int kinds = !m.preset.empty() + !m.family.empty() + (n["matrix"] ? 1 : 0);
  if (kinds == 0) missing("model.preset");
  if (kinds > 1) fail("model takes exactly one of preset, family or matrix");
  if (!m.family.empty()) {
    const auto& keys = param_keys(m.family);
    const YAML::Node p = n["params"];
    if (!p) missing("model.params");
    if (!p.IsMap()) fail("field 'model.params' must be a mapping");
    for (const auto& key : keys) {
      if (!p[key]) missing("model.params." + key);
      m.params[key] = get<double>(p[key], "model.params." + key);
    }
    if (p.size() != keys.size()) fail("model.params has unknown entries");
  } else if (n["params"]) {
    fail("field 'model.params' needs model.family");
  }
  if (n["matrix"]) {
    const YAML::Node rows = n["matrix"];
    if (!rows.IsSequence() || rows.size() == 0) fail("field 'model.matrix' must be a list of rows");
    const auto dim = static_cast<Eigen::Index>(rows.size());
    m.matrix = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const Vector row = read_vector(rows[static_cast<std::size_t>(i)], "model.matrix");
      if (row.size() != dim) fail("field 'model.matrix' must be square");
      m.matrix.row(i) = row.transpose();
    }
    if (!n["edges"]) missing("model.edges");
    m.edges = read_edges(n["edges"], "model.edges");
  } else if (n["edges"]) {
    fail("field 'model.edges' needs model.matrix");
  }
  return m;
}

IntegratorOptions read_integrator(const YAML::Node& n) {
  check_keys(n, "integrator", {"rel_tol", "abs_tol", "t_max", "log_mode", "floor", "max_steps",
                               "escape_radius", "max_step", "output_spacing"});
  IntegratorOptions o;
  const std::string p = "integrator.";
  read(n, "rel_tol", p, o.rel_tol);
  read(n, "abs_tol", p, o.abs_tol);
  read(n, "t_max", p, o.t_max);
  read(n, "log_mode", p, o.log_mode);
  read(n, "floor", p, o.floor);
  read(n, "max_steps", p, o.max_steps);
  read(n, "escape_radius", p, o.escape_radius);
  read(n, "max_step", p, o.max_step);
  read(n, "output_spacing", p, o.output_spacing);
  return o;
}

AnalysisSpec read_analysis(const YAML::Node& n) {
  check_keys(n, "analysis", {"itinerary", "residence_ratios", "projection", "indices", "eta",
                             "min_episode", "transient", "edge_scheme"});
  AnalysisSpec a;
  const std::string p = "analysis.";
  read(n, "itinerary", p, a.itinerary);
  read(n, "residence_ratios", p, a.residence_ratios);
  read(n, "projection", p, a.projection);
  read(n, "indices", p, a.indices);
  read(n, "eta", p, a.eta);
  read(n, "min_episode", p, a.min_episode);
  read(n, "transient", p, a.transient);
  if (n["edge_scheme"]) {
    const auto s = get<std::string>(n["edge_scheme"], "analysis.edge_scheme");
    if (s == "generic") a.edge_scheme = EdgeScheme::Generic;
    else if (s == "rpssl") a.edge_scheme = EdgeScheme::RPSSL;
    else fail("field 'analysis.edge_scheme' must be generic or rpssl");
  }
  return a;
}

VisibilitySpec read_visibility(const YAML::Node& n) {
  check_keys(n, "visibility", {"targets", "delta", "epsilon", "samples", "t_max", "transient",
                               "recurrence", "exclusions", "seed", "rel_tol", "abs_tol", "threads"});
  VisibilitySpec v;
  const YAML::Node t = n["targets"];
  if (!t) missing("visibility.targets");
  if (!t.IsSequence()) fail("field 'visibility.targets' must be a list");
  for (const auto& e : t) {
    TargetSpec ts;
    if (e.IsScalar()) {
      ts.id = get<std::string>(e, "visibility.targets");
    } else {
      check_keys(e, "visibility.targets[]", {"id", "edges"});
      if (!e["id"]) missing("visibility.targets[].id");
      ts.id = get<std::string>(e["id"], "visibility.targets[].id");
      if (e["edges"]) ts.edges = read_edges(e["edges"], "visibility.targets[].edges");
    }
    v.targets.push_back(ts);
  }
  auto& c = v.config;
  const std::string p = "visibility.";
  if (n["delta"]) {
    const Vector d = read_vector(n["delta"], "visibility.delta");
    c.delta_ladder.assign(d.data(), d.data() + d.size());
  }
  read(n, "epsilon", p, c.epsilon);
  read(n, "samples", p, c.samples_per_delta);
  read(n, "t_max", p, c.t_max);
  read(n, "transient", p, c.transient_T);
  read(n, "recurrence", p, c.recurrence_count);
  if (n["exclusions"]) c.exclusions = read_exclusions(n["exclusions"], "visibility.exclusions");
  read(n, "seed", p, c.rng_seed);
  read(n, "rel_tol", p, c.rel_tol);
  read(n, "abs_tol", p, c.abs_tol);
  read(n, "threads", p, c.threads);
  return v;
}

// Shortest text that parses back to the same double.
std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void emit_vector(YAML::Emitter& out, const Vector& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (Eigen::Index i = 0; i < v.size(); ++i) out << fmt(v(i));
  out << YAML::EndSeq;
}

void emit_edges(YAML::Emitter& out, const std::vector<Edge>& edges) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const auto& [a, b] : edges) out << YAML::Flow << YAML::BeginSeq << a << b << YAML::EndSeq;
  out << YAML::EndSeq;
}

bool same_options(const IntegratorOptions& a, const IntegratorOptions& b) {
  return a.rel_tol == b.rel_tol && a.abs_tol == b.abs_tol && a.t_max == b.t_max &&
         a.log_mode == b.log_mode && a.floor == b.floor && a.max_steps == b.max_steps &&
         a.escape_radius == b.escape_radius && a.max_step == b.max_step &&
         a.output_spacing == b.output_spacing;
}

bool same_vectors(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].size() != b[k].size() || a[k] != b[k]) return false;
  }
  return true;
}


}  // namespace

bool ModelSpec::operator==(const ModelSpec& o) const {
  if (matrix.rows() != o.matrix.rows() || matrix.cols() != o.matrix.cols()) return false;
  return preset == o.preset && family == o.family && params == o.params && matrix == o.matrix &&
         representation == o.representation && orthant == o.orthant && edges == o.edges;
}

bool VisibilitySpec::operator==(const VisibilitySpec& o) const {
  const auto& a = config;
  const auto& b = o.config;
  return targets == o.targets && a.delta_ladder == b.delta_ladder && a.epsilon == b.epsilon &&
         a.samples_per_delta == b.samples_per_delta && a.t_max == b.t_max &&
         a.transient_T == b.transient_T && a.recurrence_count == b.recurrence_count &&
         a.exclusions == b.exclusions && a.rng_seed == b.rng_seed && a.rel_tol == b.rel_tol &&
         a.abs_tol == b.abs_tol && a.threads == b.threads;
}

bool Scenario::operator==(const Scenario& o) const {
  return name == o.name && model == o.model && same_vectors(initial_conditions, o.initial_conditions) &&
         sampling == o.sampling && same_options(integrator, o.integrator) && analysis == o.analysis &&
         plots == o.plots && visibility == o.visibility && output == o.output;
}

void Scenario::validate() const {
  const bool analysis_requested =
      analysis.itinerary || analysis.residence_ratios || analysis.projection || analysis.indices;
  if (!analysis_requested && !visibility) fail("no request: enable an analysis or add visibility");
  if (!initial_conditions.empty() && sampling) fail("give initial_conditions or sampling, not both");
  if (sampling) {
    if (sampling->count < 1) fail("field 'sampling.count' must be at least 1");
    if (!(sampling->delta > 0.0)) fail("field 'sampling.delta' must be positive");
  }
  if (analysis.residence_ratios && !analysis.itinerary) {
    fail("field 'analysis.residence_ratios' needs analysis.itinerary");
  }
  if (!(analysis.eta > 0.0 && analysis.eta < 1.0)) fail("field 'analysis.eta' must lie in (0, 1)");
  if (!(analysis.min_episode >= 0.0)) fail("field 'analysis.min_episode' must be nonnegative");
  if (visibility && visibility->targets.empty()) fail("field 'visibility.targets' is empty");
  if (output.empty()) missing("output");
  try {
    integrator.validate();
    if (visibility) visibility->config.validate();
  } catch (const Error& e) {
    fail(e.what());
  }
}

Scenario parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    fail(std::string("malformed YAML: ") + e.what());
  }
  if (!root || root.IsNull()) fail("empty document");
  check_keys(root, "", {"name", "model", "initial_conditions", "sampling", "integrator",
                        "analysis", "plots", "visibility", "output"});
  Scenario s;
  read(root, "name", "", s.name);
  if (!root["model"]) missing("model");
  s.model = read_model(root["model"]);
  if (const YAML::Node ics = root["initial_conditions"]) {
    if (!ics.IsSequence()) fail("field 'initial_conditions' must be a list of vectors");
    for (const auto& v : ics) s.initial_conditions.push_back(read_vector(v, "initial_conditions"));
  }
  if (const YAML::Node n = root["sampling"]) {
    check_keys(n, "sampling", {"target", "delta", "count", "seed", "exclusions"});
    SamplingSpec sp;
    read(n, "target", "sampling.", sp.target);
    read(n, "delta", "sampling.", sp.delta);
    read(n, "count", "sampling.", sp.count);
    read(n, "seed", "sampling.", sp.seed);
    if (n["exclusions"]) sp.exclusions = read_exclusions(n["exclusions"], "sampling.exclusions");
    s.sampling = sp;
  }
  if (root["integrator"]) s.integrator = read_integrator(root["integrator"]);
  if (root["analysis"]) s.analysis = read_analysis(root["analysis"]);
  if (const YAML::Node n = root["plots"]) {
    check_keys(n, "plots", {"enabled", "scale"});
    read(n, "enabled", "plots.", s.plots.enabled);
    if (n["scale"]) {
      const auto sc = get<std::string>(n["scale"], "plots.scale");
      if (sc != "log" && sc != "linear") fail("field 'plots.scale' must be log or linear");
      s.plots.log_scale = sc == "log";
    }
  }
  if (root["visibility"]) s.visibility = read_visibility(root["visibility"]);
  read(root, "output", "", s.output);
  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read scenario '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string write_scenario(const Scenario& s) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << s.name;

  out << YAML::Key << "model" << YAML::Value << YAML::BeginMap;
  const auto& m = s.model;
  if (!m.preset.empty()) {
    out << YAML::Key << "preset" << YAML::Value << m.preset;
  } else if (!m.family.empty()) {
    out << YAML::Key << "family" << YAML::Value << m.family;
    out << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
    for (const auto& key : param_keys(m.family)) {
      out << YAML::Key << key << YAML::Value << fmt(m.params.at(key));
    }
    out << YAML::EndMap;
  } else {
    out << YAML::Key << "matrix" << YAML::Value << YAML::BeginSeq;
    for (Eigen::Index i = 0; i < m.matrix.rows(); ++i) emit_vector(out, m.matrix.row(i).transpose());
    out << YAML::EndSeq;
    out << YAML::Key << "edges" << YAML::Value;
    emit_edges(out, m.edges);
  }
  out << YAML::Key << "representation" << YAML::Value
      << (m.representation == Representation::LotkaVolterra ? "lotka-volterra" : "cubic");
  out << YAML::Key << "orthant" << YAML::Value << m.orthant;
  out << YAML::EndMap;

  if (!s.initial_conditions.empty()) {
    out << YAML::Key << "initial_conditions" << YAML::Value << YAML::BeginSeq;
    for (const auto& v : s.initial_conditions) emit_vector(out, v);
    out << YAML::EndSeq;
  }
  if (s.sampling) {
    const auto& sp = *s.sampling;
    out << YAML::Key << "sampling" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "target" << YAML::Value << sp.target;
    out << YAML::Key << "delta" << YAML::Value << fmt(sp.delta);
    out << YAML::Key << "count" << YAML::Value << sp.count;
    out << YAML::Key << "seed" << YAML::Value << sp.seed;
    out << YAML::Key << "exclusions" << YAML::Value << exclusions_name(sp.exclusions);
    out << YAML::EndMap;
  }

  const auto& o = s.integrator;
  out << YAML::Key << "integrator" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "rel_tol" << YAML::Value << fmt(o.rel_tol);
  out << YAML::Key << "abs_tol" << YAML::Value << fmt(o.abs_tol);
  out << YAML::Key << "t_max" << YAML::Value << fmt(o.t_max);
  out << YAML::Key << "log_mode" << YAML::Value << o.log_mode;
  out << YAML::Key << "floor" << YAML::Value << fmt(o.floor);
  out << YAML::Key << "max_steps" << YAML::Value << o.max_steps;
  out << YAML::Key << "escape_radius" << YAML::Value << fmt(o.escape_radius);
  out << YAML::Key << "max_step" << YAML::Value << fmt(o.max_step);
  out << YAML::Key << "output_spacing" << YAML::Value << fmt(o.output_spacing);
  out << YAML::EndMap;

  const auto& a = s.analysis;
  out << YAML::Key << "analysis" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "itinerary" << YAML::Value << a.itinerary;
  out << YAML::Key << "residence_ratios" << YAML::Value << a.residence_ratios;
  out << YAML::Key << "projection" << YAML::Value << a.projection;
  out << YAML::Key << "indices" << YAML::Value << a.indices;
  out << YAML::Key << "eta" << YAML::Value << fmt(a.eta);
  out << YAML::Key << "min_episode" << YAML::Value << fmt(a.min_episode);
  out << YAML::Key << "transient" << YAML::Value << fmt(a.transient);
  out << YAML::Key << "edge_scheme" << YAML::Value
      << (a.edge_scheme == EdgeScheme::RPSSL ? "rpssl" : "generic");
  out << YAML::EndMap;

  out << YAML::Key << "plots" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "enabled" << YAML::Value << s.plots.enabled;
  out << YAML::Key << "scale" << YAML::Value << (s.plots.log_scale ? "log" : "linear");
  out << YAML::EndMap;

  if (s.visibility) {
    const auto& v = *s.visibility;
    const auto& c = v.config;
    out << YAML::Key << "visibility" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "targets" << YAML::Value << YAML::BeginSeq;
    for (const auto& t : v.targets) {
      if (t.edges.empty()) {
        out << t.id;
      } else {
        out << YAML::BeginMap << YAML::Key << "id" << YAML::Value << t.id;
        out << YAML::Key << "edges" << YAML::Value;
        emit_edges(out, t.edges);
        out << YAML::EndMap;
      }
    }
    out << YAML::EndSeq;
    out << YAML::Key << "delta" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (double d : c.delta_ladder) out << fmt(d);
    out << YAML::EndSeq;
    out << YAML::Key << "epsilon" << YAML::Value << fmt(c.epsilon);
    out << YAML::Key << "samples" << YAML::Value << c.samples_per_delta;
    out << YAML::Key << "t_max" << YAML::Value << fmt(c.t_max);
    out << YAML::Key << "transient" << YAML::Value << fmt(c.transient_T);
    out << YAML::Key << "recurrence" << YAML::Value << c.recurrence_count;
    out << YAML::Key << "exclusions" << YAML::Value << exclusions_name(c.exclusions);
    out << YAML::Key << "seed" << YAML::Value << c.rng_seed;
    out << YAML::Key << "rel_tol" << YAML::Value << fmt(c.rel_tol);
    out << YAML::Key << "abs_tol" << YAML::Value << fmt(c.abs_tol);
    out << YAML::Key << "threads" << YAML::Value << c.threads;
    out << YAML::EndMap;
  }
  out << YAML::Key << "output" << YAML::Value << s.output;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

Scenario scenario_for_preset(const std::string& preset_id) {
  const Preset& p = find_preset(preset_id);
  Scenario s;
  s.name = p.id;
  s.model.preset = p.id;
  s.initial_conditions = {p.initial_condition};
  s.integrator.t_max = p.t_max;
  s.analysis.projection = p.model().dimension() == 5;
  s.analysis.edge_scheme = p.family == Family::RPSSL ? EdgeScheme::RPSSL : EdgeScheme::Generic;
  s.analysis.transient = p.family == Family::RPSSL ? 500.0 : 0.0;
  s.output = "runs/" + p.id;
  return s;
}

std::string scenario_hash(const Scenario& s) {
  Scenario copy = s;
  copy.output.clear();
  const std::string text = write_scenario(copy);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ResolvedModel resolve_model(const ModelSpec& spec) {
  auto as_rep = [&](NetworkModel m) {
    return spec.representation == Representation::LotkaVolterra ? to_lotka_volterra(m) : m;
  };
  if (!spec.preset.empty()) {
    const Preset& p = find_preset(spec.preset);
    ResolvedModel r{as_rep(p.model()), p.edges, p.targets, p.family, {}, p.id};
    std::visit([&](const auto& v) { r.params = v; }, p.params);
    return r;
  }
  if (!spec.family.empty()) {
    const auto& P = spec.params;
    auto first_of = [](Family f) -> const Preset& {
      for (const auto& p : presets()) {
        if (p.family == f) return p;
      }
      throw Error(ErrorCode::UnknownPreset, "no preset for family");
    };
    if (spec.family == "gh") {
      GHParams g{P.at("c21"), P.at("c32"), P.at("c13"), P.at("e12"), P.at("e23"), P.at("e31")};
      const auto& ref = first_of(Family::GuckenheimerHolmes);
      return {as_rep(make_gh_model(g)), ref.edges, ref.targets, ref.family, g, "gh (custom)"};
    }
    if (spec.family == "ks") {
      KSParams k;
      k.e12 = P.at("e12"), k.c13 = P.at("c13"), k.c14 = P.at("c14"), k.c21 = P.at("c21");
      k.e23 = P.at("e23"), k.e24 = P.at("e24"), k.e31 = P.at("e31"), k.c32 = P.at("c32");
      k.t43 = P.at("t43"), k.e41 = P.at("e41"), k.c42 = P.at("c42"), k.t34 = P.at("t34");
      const auto& ref = first_of(Family::KirkSilber);
      return {as_rep(make_ks_model(k)), ref.edges, ref.targets, ref.family, k, "ks (custom)"};
    }
    RPSSLParams q{P.at("cA"), P.at("eA"), P.at("cB"), P.at("eB")};
    const auto& ref = first_of(Family::RPSSL);
    return {as_rep(make_rpssl_model(q)), ref.edges, ref.targets, ref.family, q, "rpssl (custom)"};
  }
  const int n = static_cast<int>(spec.matrix.rows());
  ResolvedModel r{make_generic_model(n, spec.matrix, spec.representation, spec.orthant),
                  spec.edges,
                  {{"network", spec.edges}},
                  std::nullopt,
                  {},
                  "inline matrix"};
  return r;
}

NamedTarget resolve_target(const ResolvedModel& m, const TargetSpec& t) {
  if (!t.edges.empty()) return {t.id, t.edges};
  for (const auto& nt : m.targets) {
    if (nt.id == t.id) return nt;
  }
  std::string known;
  for (const auto& nt : m.targets) known += (known.empty() ? "" : ", ") + nt.id;
  throw Error(ErrorCode::UnknownTarget, "unknown target '" + t.id + "' (known: " + known + ")");
}

}  // namespace hetnet::cli
