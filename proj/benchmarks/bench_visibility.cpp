#include "hetnet/presets.hpp"
#include "hetnet/visibility.hpp"

#include <benchmark/benchmark.h>

using namespace hetnet;

static void BM_SampleNeighborhood(benchmark::State& state) {
  const auto g = build_network_geometry(make_ks_model(ks_table_params('a')), ks_edges());
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_neighborhood(g, 1e-3, 200, Exclusions::InvariantSubspaces, seed++).size());
  }
}
BENCHMARK(BM_SampleNeighborhood);

/// One Monte Carlo sample: integrate to t_max and classify.
static void BM_ClassifySample(benchmark::State& state) {
  const auto& p = find_preset("gh");
  const auto m = p.model();
  const auto g = build_network_geometry(m, p.edges);
  VisibilityConfig cfg;
  const auto x0 = sample_neighborhood(g, 1e-3, 1, cfg.exclusions, 9).front();
  IntegratorOptions o;
  o.t_max = cfg.t_max;
  o.output_spacing = cfg.epsilon / 4.0;
  for (auto _ : state) {
    const auto t = integrate(m, x0, o);
    benchmark::DoNotOptimize(classify_trajectory(t, g, p.edges, cfg).converged);
  }
}
BENCHMARK(BM_ClassifySample)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
