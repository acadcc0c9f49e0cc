#include "hetnet/itinerary.hpp"

#include "hetnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hetnet {

std::string to_string(EdgeLabel l) {
  switch (l) {
    case EdgeLabel::A: return "A";
    case EdgeLabel::B: return "B";
    case EdgeLabel::Interior: return "I";
    case EdgeLabel::Other: return "O";
  }
  return "?";
}

std::string Itinerary::visit_string() const {
  std::string out;
  for (const auto& e : episodes) {
    if (e.equilibrium < 0) out += '-';
    out += std::to_string(std::abs(e.equilibrium));
  }
  return out;
}

std::string Itinerary::label_string() const {
  std::string out;
  for (auto l : edge_labels) out += to_string(l);
  return out;
}

Itinerary extract_itinerary(const Trajectory& traj, double min_duration, std::string source_id) {
  if (traj.events.empty()) {
    throw Error(ErrorCode::NoEvents, "trajectory carries no equilibrium events");
  }
  if (!(min_duration >= 0.0)) {
    throw Error(ErrorCode::InvalidOptions, "min_duration must be nonnegative");
  }
  Itinerary it;
  it.source_id = std::move(source_id);
  std::map<int, double> open;
  for (const auto& ev : traj.events) {
    if (ev.kind == EventKind::Enter) {
      open[ev.equilibrium] = ev.t;
      continue;
    }
    auto found = open.find(ev.equilibrium);
    if (found == open.end()) continue;
    if (ev.t - found->second >= min_duration && ev.t > found->second) {
      it.episodes.push_back({ev.equilibrium, found->second, ev.t, false});
    }
    open.erase(found);
  }
  const double t_end = traj.final_time();
  for (const auto& [id, t] : open) {
    if (t_end - t >= min_duration && t_end > t) it.episodes.push_back({id, t, t_end, true});
  }
  std::sort(it.episodes.begin(), it.episodes.end(),
            [](const Episode& a, const Episode& b) { return a.t_enter < b.t_enter; });
  return it;
}

Itinerary classify_edges(Itinerary it, const Trajectory& traj, const NetworkModel& m,
                         EdgeScheme scheme, double interior_threshold) {
  const int n = m.dimension();
  if (scheme == EdgeScheme::RPSSL && n != 5) {
    throw Error(ErrorCode::WrongDimension, "A/B edge labels need a 5-dimensional model");
  }
  it.edge_labels.clear();
  std::size_t cursor = 0;
  for (std::size_t k = 0; k + 1 < it.episodes.size(); ++k) {
    const auto& a = it.episodes[k];
    const auto& b = it.episodes[k + 1];
    EdgeLabel label = EdgeLabel::Other;
    if (scheme == EdgeScheme::RPSSL && a.equilibrium > 0 && b.equilibrium > 0) {
      const int from = a.equilibrium - 1;
      const int to = b.equilibrium - 1;
      if (to == (from + 1) % 5) label = EdgeLabel::A;
      else if (to == (from + 3) % 5) label = EdgeLabel::B;
    }
    while (cursor < traj.times.size() && traj.times[cursor] < a.t_exit) ++cursor;
    for (std::size_t i = cursor; i < traj.times.size() && traj.times[i] <= b.t_enter; ++i) {
      int above = 0;
      for (int j = 0; j < n; ++j) {
        if (std::abs(traj.states[i](j)) > interior_threshold) ++above;
      }
      if (above >= 3) {
        label = EdgeLabel::Interior;
        break;
      }
    }
    it.edge_labels.push_back(label);
  }
  return it;
}

std::vector<Loop> loop_durations(const Itinerary& it) {
  std::vector<Loop> out;
  const auto& ep = it.episodes;
  for (std::size_t i = 0; i < ep.size(); ++i) {
    for (std::size_t j = i + 1; j < ep.size(); ++j) {
      if (ep[j].equilibrium == ep[i].equilibrium) {
        out.push_back({i, ep[i].equilibrium, ep[j].t_enter - ep[i].t_enter});
        break;
      }
    }
  }
  return out;
}

std::vector<double> residence_ratios(const Itinerary& it) {
  if (it.episodes.size() < 3) {
    throw Error(ErrorCode::TooFewEpisodes, "residence ratios need at least 3 episodes");
  }
  const auto loops = loop_durations(it);
  std::map<int, double> previous;
  std::vector<double> out;
  for (const auto& l : loops) {
    auto p = previous.find(l.equilibrium);
    if (p != previous.end() && p->second > 0.0) out.push_back(l.duration / p->second);
    previous[l.equilibrium] = l.duration;
  }
  return out;
}

std::size_t smallest_period(const std::string& seq, std::size_t max_period) {
  for (std::size_t p = 1; p <= max_period && p < seq.size(); ++p) {
    bool ok = true;
    for (std::size_t i = 0; i + p < seq.size() && ok; ++i) ok = seq[i] == seq[i + p];
    if (ok) return p;
  }
  return 0;
}

}  // namespace hetnet
