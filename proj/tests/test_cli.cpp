#include "commands.hpp"
#include "scenario.hpp"

#include "hetnet/error.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hetnet;
using namespace hetnet::cli;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hetnet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("hetnet_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string parse_error(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return e.what();
  }
  FAIL("scenario parsed unexpectedly");
  return {};
}

}  // namespace

TEST_CASE("scenario text round trip") {
  for (const char* id : {"gh", "ks-b", "rpssl-c"}) {
    const Scenario s = scenario_for_preset(id);
    CHECK(parse_scenario(write_scenario(s)) == s);
  }

  Scenario s = scenario_for_preset("ks-a");
  s.model.preset.clear();
  s.model.family = "ks";
  for (const char* k : {"e12", "c13", "c14", "c21", "e23", "e24", "e31", "c32", "t43", "e41", "c42", "t34"}) {
    s.model.params[k] = 1.0;
  }
  s.model.params["c13"] = 0.1 + 0.2;  // not exactly representable in short decimal
  s.initial_conditions.clear();
  s.sampling = SamplingSpec{"cycle123", 1e-3, 4, 77, Exclusions::InvariantSubspaces};
  VisibilitySpec vis;
  vis.targets = {{"cycle124", {}}, {"custom", {{1, 2}, {2, 3}, {3, 1}}}};
  vis.config.samples_per_delta = 7;
  vis.config.delta_ladder = {3e-2, 3e-3};
  s.visibility = vis;
  const Scenario back = parse_scenario(write_scenario(s));
  CHECK(back == s);
  CHECK(scenario_hash(back) == scenario_hash(s));

  Scenario m;
  m.model.matrix = Matrix::Zero(3, 3);
  m.model.matrix(0, 1) = 1.5;
  m.model.matrix(1, 0) = -0.25;
  m.model.edges = {{1, 2}, {2, 1}};
  m.initial_conditions = {Vector::Constant(3, 0.2)};
  CHECK(parse_scenario(write_scenario(m)) == m);
}

TEST_CASE("the output directory does not change the scenario hash") {
  Scenario a = scenario_for_preset("gh");
  Scenario b = a;
  b.output = "elsewhere";
  CHECK(scenario_hash(a) == scenario_hash(b));
  b.integrator.t_max += 1.0;
  CHECK(scenario_hash(a) != scenario_hash(b));
}

TEST_CASE("scenario errors name the field") {
  CHECK(parse_error("name: x\n") == "scenario: missing field 'model'");
  CHECK(parse_error("model: {preset: gh}\nbogus: 1\n").find("bogus") != std::string::npos);
  CHECK(parse_error("model: {family: gh, params: {c21: 1}}\ninitial_conditions: [[0.5, 0.1, 0.1]]\n")
            .find("c32") != std::string::npos);
  CHECK(parse_error("model: {preset: gh}\nsampling: {count: 0}\n").find("sampling.count") != std::string::npos);
  CHECK(parse_error("model: {preset: gh\n").find("YAML") != std::string::npos);
}

TEST_CASE("preset listing") {
  const auto text = presets_listing();
  for (const char* id : {"gh", "ks-a", "ks-b", "ks-c", "ks-d", "rpssl-a", "rpssl-b", "rpssl-c", "rpssl-d"}) {
    CHECK(text.find(id) != std::string::npos);
  }
  CHECK(text.find("rho_124 = 1.0") != std::string::npos);
  CHECK(text.find("AABBB") != std::string::npos);
  const auto r = run_cli({"presets"});
  CHECK(r.code == kOk);
  CHECK(r.out == text);
}

TEST_CASE("indices subcommand") {
  const auto r = run_cli({"indices", "--preset", "ks-b"});
  REQUIRE(r.code == kOk);
  const auto line = r.out.find("nu_1234");
  REQUIRE(line != std::string::npos);
  CHECK(r.out.substr(line, r.out.find('\n', line) - line).find("negative") != std::string::npos);
  CHECK(r.out.find("switching 3->4") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == kUsage);
  CHECK(run_cli({"frobnicate"}).code == kUsage);
  CHECK(run_cli({"indices", "--preset", "nope"}).code == kUsage);
  CHECK(run_cli({"simulate", "--scenario", "/nonexistent/file.yaml"}).code == kUsage);
  CHECK(run_cli({"simulate", "--preset", "gh", "--tmax", "-5"}).code == kUsage);
  // A transient longer than half the horizon cannot be classified.
  const auto dir = scratch_dir("short");
  const auto r = run_cli({"classify", "--preset", "gh", "--tmax", "100", "--samples", "2", "--out", dir.string()});
  CHECK(r.code == kNumerical);
  CHECK_FALSE(fs::exists(dir / "verdict.json"));
}

TEST_CASE("simulate writes deterministic outputs") {
  const auto a = scratch_dir("sim_a"), b = scratch_dir("sim_b");
  REQUIRE(run_cli({"simulate", "--preset", "gh", "--tmax", "60", "--out", a.string()}).code == kOk);
  REQUIRE(run_cli({"simulate", "--preset", "gh", "--tmax", "60", "--out", b.string()}).code == kOk);
  for (const char* f : {"indices.json", "trajectory.csv", "itinerary.csv", "report.json",
                        "plots/timeseries.svg"}) {
    INFO(f);
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  const auto without_output = [](std::string text) { return text.substr(0, text.find("\noutput:")); };
  CHECK(without_output(slurp(a / "scenario.yaml")) == without_output(slurp(b / "scenario.yaml")));
  const auto traj = slurp(a / "trajectory.csv");
  CHECK(traj.rfind("# scenario=", 0) == 0);
  // The saved scenario reproduces the run.
  const auto c = scratch_dir("sim_c");
  REQUIRE(run_cli({"simulate", "--scenario", (a / "scenario.yaml").string(), "--out", c.string()}).code == kOk);
  CHECK(slurp(c / "trajectory.csv") == traj);
  for (const auto& d : {a, b, c}) fs::remove_all(d);
}

TEST_CASE("family parameters build the same model as the preset") {
  const auto dir = scratch_dir("family");
  fs::create_directories(dir);
  std::ofstream(dir / "s.yaml") << "model:\n  family: ks\n  params: {e12: 1, c13: 1, c14: 1, c21: 1, e23: 1, "
                                   "e24: 1, e31: 1, c32: 1, t43: 1, e41: 1, c42: 1, t34: 1}\n"
                                   "initial_conditions: [[0.1, 0.9, 0.05, 0.05]]\n";
  const auto r = run_cli({"indices", "--scenario", (dir / "s.yaml").string()});
  REQUIRE(r.code == kOk);
  CHECK(r.out.find("rho_123 = 1.0000") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("shipped example scenarios parse and build their models") {
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(HETNET_SCENARIO_DIR)) {
    if (entry.path().extension() != ".yaml") continue;
    INFO(entry.path().string());
    const auto r = run_cli({"indices", "--scenario", entry.path().string()});
    CHECK(r.code == kOk);
    ++seen;
  }
  CHECK(seen >= 4);
}

TEST_CASE("a horizon shorter than the projection transient still writes the run") {
  const auto dir = scratch_dir("short_pentacle");
  const auto r = run_cli({"simulate", "--preset", "rpssl-c", "--tmax", "300", "--out", dir.string()});
  CHECK(r.code == kOk);
  CHECK(fs::exists(dir / "trajectory.csv"));
  CHECK_FALSE(fs::exists(dir / "plots" / "pentacle.svg"));
  CHECK(slurp(dir / "report.json").find("pentacle plot skipped") != std::string::npos);
  fs::remove_all(dir);
}
