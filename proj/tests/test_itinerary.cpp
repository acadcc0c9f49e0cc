#include "hetnet/error.hpp"
#include "hetnet/itinerary.hpp"
#include "hetnet/presets.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace hetnet;

namespace {

/// Trajectory whose events visit `ids` with the given entry times, each
/// episode lasting `stay`, over an all-zero state record.
Trajectory synthetic(const std::vector<int>& ids, const std::vector<double>& enter, double stay, int n = 5) {
  Trajectory t;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    t.events.push_back({EventKind::Enter, enter[k], ids[k]});
    t.events.push_back({EventKind::Exit, enter[k] + stay, ids[k]});
  }
  const double end = enter.back() + stay + 1.0;
  for (double s = 0.0; s <= end; s += 0.25) {
    t.times.push_back(s);
    t.states.push_back(Vector::Zero(n));
  }
  return t;
}

}  // namespace

TEST_CASE("episodes pair Enter and Exit events and drop grazes") {
  Trajectory t = synthetic({1, 2, 3}, {1.0, 5.0, 9.0}, 1.0, 3);
  t.events.push_back({EventKind::Enter, 12.0, 1});
  t.events.push_back({EventKind::Exit, 12.1, 1});  // graze
  std::sort(t.events.begin(), t.events.end(), [](const Event& a, const Event& b) { return a.t < b.t; });
  const auto it = extract_itinerary(t);
  CHECK(it.visit_string() == "123");
  CHECK(it.episodes[1].t_enter == 5.0);
  CHECK(it.episodes[1].t_exit == 6.0);
  CHECK_FALSE(it.episodes[2].open);
}

TEST_CASE("an episode still open at the end of the run is marked open") {
  Trajectory t = synthetic({1, 2}, {1.0, 5.0}, 1.0, 3);
  t.events.pop_back();
  const auto it = extract_itinerary(t);
  REQUIRE(it.episodes.size() == 2);
  CHECK(it.episodes.back().open);
  CHECK(it.episodes.back().t_exit == t.final_time());
}

TEST_CASE("no events is an error") {
  Trajectory t;
  t.times = {0.0, 1.0};
  t.states = {Vector::Zero(3), Vector::Zero(3)};
  try {
    extract_itinerary(t);
    FAIL("expected NoEvents");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoEvents);
  }
}

TEST_CASE("RPSSL edge labels: j -> j+1 is A, j -> j-2 is B") {
  const auto m = make_rpssl_model(rpssl_table_params('c'));
  const std::vector<int> ids = {1, 2, 3, 1, 2, 5, 3, 1};
  std::vector<double> enter;
  for (std::size_t k = 0; k < ids.size(); ++k) enter.push_back(2.0 * static_cast<double>(k) + 1.0);
  const auto t = synthetic(ids, enter, 0.6);
  const auto it = classify_edges(extract_itinerary(t), t, m, EdgeScheme::RPSSL);
  CHECK(it.label_string() == "AABABBB");
}

TEST_CASE("interior excursions are labelled I") {
  const auto m = make_rpssl_model(rpssl_table_params('d'));
  auto t = synthetic({1, 2, 3}, {1.0, 3.0, 5.0}, 0.6);
  // Three coordinates above threshold between the second and third episode.
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    if (t.times[k] > 3.8 && t.times[k] < 4.8) t.states[k] << 0.3, 0.3, 0.3, 0.0, 0.0;
  }
  const auto it = classify_edges(extract_itinerary(t), t, m, EdgeScheme::RPSSL);
  CHECK(it.label_string() == "AI");
}

TEST_CASE("RPSSL labels need five dimensions") {
  const auto m = make_gh_model(gh_table_params());
  const auto t = synthetic({1, 2}, {1.0, 3.0}, 0.6, 3);
  try {
    classify_edges(extract_itinerary(t), t, m, EdgeScheme::RPSSL);
    FAIL("expected WrongDimension");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongDimension);
  }
}

TEST_CASE("loop durations and residence ratios on a geometric schedule") {
  // Entry times of a 123 cycle whose loops grow by a factor 4/3.
  std::vector<int> ids;
  std::vector<double> enter;
  double t = 1.0, step = 3.0;
  for (int k = 0; k < 12; ++k) {
    ids.push_back(k % 3 + 1);
    enter.push_back(t);
    t += step;
    step *= 4.0 / 3.0;
  }
  const auto tr = synthetic(ids, enter, 0.6, 3);
  const auto it = extract_itinerary(tr);
  const auto loops = loop_durations(it);
  REQUIRE(loops.size() == 9);
  const auto ratios = residence_ratios(it);
  REQUIRE(ratios.size() == 6);
  for (double r : ratios) CHECK(std::abs(r - std::pow(4.0 / 3.0, 3)) < 1e-12);
}

TEST_CASE("residence ratios need three episodes") {
  const auto tr = synthetic({1, 2}, {1.0, 3.0}, 0.6, 3);
  try {
    residence_ratios(extract_itinerary(tr));
    FAIL("expected TooFewEpisodes");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooFewEpisodes);
  }
}

TEST_CASE("smallest period") {
  CHECK(smallest_period("AAAAAA", 20) == 1);
  CHECK(smallest_period("AABBBAABBBAABBB", 20) == 5);
  CHECK(smallest_period("BAABAABAA", 20) == 3);
  CHECK(smallest_period("ABAABBBA", 3) == 0);
  CHECK(smallest_period("", 5) == 0);
}
