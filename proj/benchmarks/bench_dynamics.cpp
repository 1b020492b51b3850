#include <benchmark/benchmark.h>

#include "rcdyn/dynamics.hpp"
#include "rcdyn/graph.hpp"
#include "rcdyn/oracle.hpp"

using namespace rcdyn;

static void BM_HeatBathStep(benchmark::State& state) {
  const Lattice lat(static_cast<int>(state.range(0)));
  const int m = lat.edge_count();
  Chain chain(lat, free_boundary(lat), RcParams(0.5, 2.0), RcConfig(m));
  const CounterRng rng(1);
  std::uint64_t t = 0;
  for (auto _ : state) {
    chain.step(draw_at(rng, t++, m));
    benchmark::DoNotOptimize(chain.config());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_HeatBathStep)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_CutEdgeQuery(benchmark::State& state) {
  const Lattice lat(static_cast<int>(state.range(0)));
  const int m = lat.edge_count();
  const WiredGraph g = as_graph(lat, free_boundary(lat));
  const CounterRng rng(2);
  RcConfig config(m);
  for (int e = 0; e < m; ++e) config.set(e, rng.uniform(e) < 0.5);
  int e = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(graph_is_cut_edge(g, config, e));
    e = (e + 1) % m;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CutEdgeQuery)->Arg(8)->Arg(32)->Arg(64);

static void BM_CftpSample(benchmark::State& state) {
  const Lattice lat(static_cast<int>(state.range(0)));
  const CounterRng master(3);
  std::uint64_t s = 0;
  for (auto _ : state) {
    const auto sample = cftp_sample(lat, free_boundary(lat),
                                    RcParams(0.5, 2.0), master.derive(s++).key());
    benchmark::DoNotOptimize(sample);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CftpSample)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ExactMeasure(benchmark::State& state) {
  const Lattice lat(3);
  const WiredGraph g = as_graph(lat, free_boundary(lat));
  for (auto _ : state) {
    const ExactMeasure mu(g, RcParams(0.5, 2.0));
    benchmark::DoNotOptimize(mu.partition_function());
  }
}
BENCHMARK(BM_ExactMeasure)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
