#include "hetnet/error.hpp"
#include "hetnet/io.hpp"
#include "hetnet/presets.hpp"

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <cmath>
#include <functional>
#include <sstream>

using namespace hetnet;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("trajectory CSV round trip is exact") {
  const auto m = make_gh_model(gh_table_params());
  IntegratorOptions o;
  o.t_max = 20.0;
  Vector x0(3);
  x0 << 0.7, 0.1, 0.05;
  const auto t = integrate(m, x0, o);
  std::stringstream ss;
  ss << "# scenario=abc seed=1\n";
  write_trajectory_csv(ss, t);
  const auto back = read_trajectory_csv(ss);
  REQUIRE(back.times == t.times);
  REQUIRE(back.states.size() == t.states.size());
  for (std::size_t k = 0; k < t.states.size(); ++k) REQUIRE(back.states[k] == t.states[k]);
}

TEST_CASE("itinerary CSV round trip") {
  Itinerary it;
  it.episodes = {{1, 0.5, 1.25, false}, {2, 3.0, 4.5, false}, {-3, 7.125, 9.0, false}};
  it.edge_labels = {EdgeLabel::A, EdgeLabel::Interior};
  std::stringstream ss;
  write_itinerary_csv(ss, it);
  const auto back = read_itinerary_csv(ss);
  REQUIRE(back.episodes.size() == 3);
  CHECK(back.episodes[2].equilibrium == -3);
  CHECK(back.episodes[2].t_enter == 7.125);
  CHECK(back.episodes[1].t_exit == 4.5);
  CHECK(back.label_string() == it.label_string());
}

TEST_CASE("malformed tables raise ParseError") {
  auto parse_traj = [](const std::string& s) {
    return [s] {
      std::istringstream in(s);
      read_trajectory_csv(in);
    };
  };
  CHECK(code_of(parse_traj("")) == ErrorCode::ParseError);
  CHECK(code_of(parse_traj("t,x1\n0,1,2\n")) == ErrorCode::ParseError);
  CHECK(code_of(parse_traj("t,x1\n0,abc\n")) == ErrorCode::ParseError);
  CHECK(code_of(parse_traj("t,x2\n0,1\n")) == ErrorCode::ParseError);
  CHECK(code_of([] {
          std::istringstream in("a,b,c\n");
          read_itinerary_csv(in);
        }) == ErrorCode::ParseError);
  CHECK(code_of([] {
          std::istringstream in("episode_index,equilibrium,t_enter,t_exit,edge_label\n0,1,0,1,Z\n");
          read_itinerary_csv(in);
        }) == ErrorCode::ParseError);
  std::istringstream in("a,b\n1,2\n");
  const auto table = read_table_csv(in);
  CHECK(table.column("b") == 1);
  CHECK(code_of([&] { table.column("c"); }) == ErrorCode::ParseError);
}

TEST_CASE("pentacle CSV skips the transient") {
  Trajectory t;
  for (int k = 0; k < 10; ++k) {
    t.times.push_back(k);
    t.states.push_back(Vector::Constant(5, 0.1 * k));
  }
  std::stringstream ss;
  write_pentacle_csv(ss, t, 4.5);
  const auto table = read_table_csv(ss);
  CHECK(table.columns == std::vector<std::string>{"t", "y1", "y2"});
  CHECK(table.rows.size() == 5);
  // The all-equal state projects to the centre of the pentagon.
  for (const auto& r : table.rows) CHECK(std::hypot(r[1], r[2]) < 1e-14);
}

TEST_CASE("JSON documents carry the expected fields") {
  const auto idx = json::parse(indices_json(gh_indices(gh_table_params())));
  CHECK(std::abs(idx["rho"]["rho_123"].get<double>() - 4.0 / 3.0) < 1e-12);
  CHECK(idx["resonance"]["rho_123"].get<bool>() == false);

  const auto ks = json::parse(ks_regime_json(predict_ks_regime(ks_table_params('b'))));
  CHECK(ks["nu_signs"]["nu_1234"] == "-");
  CHECK(ks["switching"].is_string());
  CHECK(ks.contains("description"));

  const auto m = make_gh_model(gh_table_params());
  IntegratorOptions o;
  o.t_max = 100.0;
  Vector x0(3);
  x0 << 0.7, 0.1, 0.05;
  const auto ev = json::parse(events_json(integrate_with_equilibrium_events(m, x0, o, 0.2)));
  REQUIRE(ev["events"].is_array());
  REQUIRE(!ev["events"].empty());
  CHECK(ev["events"][0].contains("kind"));
  CHECK(ev["events"][0].contains("equilibrium"));
}
