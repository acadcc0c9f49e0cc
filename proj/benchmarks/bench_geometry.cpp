#include "hetnet/geometry.hpp"
#include "hetnet/presets.hpp"
#include "hetnet/visibility.hpp"

#include <benchmark/benchmark.h>

using namespace hetnet;

static void BM_BuildGeometry(benchmark::State& state) {
  const auto m = make_ks_model(ks_table_params('a'));
  for (auto _ : state) benchmark::DoNotOptimize(build_network_geometry(m, ks_edges()).total_length());
}
BENCHMARK(BM_BuildGeometry)->Unit(benchmark::kMillisecond);

/// Queries near the network, where the index has to work hardest.
static void BM_DistanceQuery(benchmark::State& state) {
  const auto g = build_network_geometry(make_ks_model(ks_table_params('a')), ks_edges());
  const auto pts = sample_neighborhood(g, static_cast<double>(state.range(0)) * 1e-4, 1024,
                                       Exclusions::InvariantSubspaces, 3);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(g.distance(pts[k++ & 1023]));
}
BENCHMARK(BM_DistanceQuery)->Arg(1)->Arg(100);
