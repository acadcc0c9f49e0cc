#include "hetnet/integrator.hpp"
#include "hetnet/itinerary.hpp"
#include "hetnet/presets.hpp"

#include <benchmark/benchmark.h>

using namespace hetnet;

static void BM_IntegratePreset(benchmark::State& state, const char* id, bool log_mode) {
  const auto& p = find_preset(id);
  const auto m = p.model();
  IntegratorOptions o;
  o.t_max = static_cast<double>(state.range(0));
  o.log_mode = log_mode;
  std::size_t steps = 0;
  for (auto _ : state) {
    const auto t = integrate(m, p.initial_condition, o);
    steps += static_cast<std::size_t>(t.accepted_steps);
    benchmark::DoNotOptimize(t.states.back().data());
  }
  state.counters["steps/s"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}
BENCHMARK_CAPTURE(BM_IntegratePreset, gh_log, "gh", true)->Arg(500);
BENCHMARK_CAPTURE(BM_IntegratePreset, gh_direct, "gh", false)->Arg(500);
BENCHMARK_CAPTURE(BM_IntegratePreset, ks_b_log, "ks-b", true)->Arg(2000);
BENCHMARK_CAPTURE(BM_IntegratePreset, rpssl_c_log, "rpssl-c", true)->Arg(2000);

static void BM_EventsAndItinerary(benchmark::State& state) {
  const auto& p = find_preset("rpssl-c");
  const auto m = p.model();
  IntegratorOptions o;
  o.t_max = 2000.0;
  for (auto _ : state) {
    const auto t = integrate_with_equilibrium_events(m, p.initial_condition, o, kDefaultEta);
    const auto it = classify_edges(extract_itinerary(t), t, m, EdgeScheme::RPSSL);
    benchmark::DoNotOptimize(it.edge_labels.size());
  }
}
BENCHMARK(BM_EventsAndItinerary);
