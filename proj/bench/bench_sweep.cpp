#include <memory>

#include <benchmark/benchmark.h>

#include "urnnet/graph.hpp"
#include "urnnet/montecarlo.hpp"
#include "urnnet/urn_dynamics.hpp"

using namespace urnnet;

namespace {

RunConfig sweep_config(std::int64_t replicas) {
  RunConfig cfg;
  cfg.graph = std::make_shared<const Graph>(make_circulant_regular(100, 10));
  cfg.graph_spec = "kreg:100:10";
  cfg.alpha = 0.5;
  cfg.horizon = 200;
  cfg.replicas = static_cast<int>(replicas);
  cfg.master_seed = 1;
  cfg.record_stride = cfg.horizon;
  return cfg;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto cfg = sweep_config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto cfg = sweep_config(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(cfg, threads));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Step(benchmark::State& state, Graph g) {
  Rng rng(7);
  UrnState s = init_signals(g, 0.5, rng);
  DrawVector draws;
  for (auto _ : state) {
    step(s, g, rng, draws);
    benchmark::DoNotOptimize(s.black.data());
  }
  state.SetItemsProcessed(state.iterations() * g.size());
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(64)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Args({64, 1})->Args({64, 2})->Args({64, 4})->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Step, kreg_100_10, make_circulant_regular(100, 10));
BENCHMARK_CAPTURE(BM_Step, complete_100, make_complete(100));
BENCHMARK_CAPTURE(BM_Step, star_100, make_star(100));

BENCHMARK_MAIN();
