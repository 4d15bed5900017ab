#include <benchmark/benchmark.h>

#include "griddisp/config.hpp"
#include "griddisp/grid.hpp"

namespace gd = griddisp;

namespace {

void BM_BuildGrid(benchmark::State& state) {
  const int side = int(state.range(0));
  for (auto _ : state) {
    gd::Grid g(gd::GridSpec::square(side, gd::Orientation::Unoriented, 7));
    benchmark::DoNotOptimize(g.node_count());
  }
}
BENCHMARK(BM_BuildGrid)->Arg(8)->Arg(16)->Arg(32);

void BM_TraverseSweep(benchmark::State& state) {
  gd::Grid g(gd::GridSpec::square(16, gd::Orientation::Unoriented, 7));
  for (auto _ : state) {
    long sum = 0;
    for (gd::NodeId v = 0; v < g.node_count(); ++v) {
      for (int p = 1; p <= g.degree(v); ++p) sum += g.traverse(v, p).node;
    }
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_TraverseSweep);

void run_protocol(benchmark::State& state, const char* protocol, bool oriented) {
  gd::RunConfig cfg;
  cfg.grid = gd::GridSpec::square(
      int(state.range(0)), oriented ? gd::Orientation::Oriented : gd::Orientation::Unoriented, 3);
  cfg.k = int(cfg.grid.node_count());
  cfg.placement_seed = 5;
  cfg.protocol = protocol;
  cfg.adversary_json = R"({"policy":"none"})";
  for (auto _ : state) {
    auto out = gd::run_configured(cfg);
    benchmark::DoNotOptimize(out.result.rounds_used);
  }
}

void BM_Alg1(benchmark::State& state) { run_protocol(state, "alg1", true); }
void BM_Alg2(benchmark::State& state) { run_protocol(state, "alg2", false); }
void BM_Alg3(benchmark::State& state) { run_protocol(state, "alg3", false); }
BENCHMARK(BM_Alg1)->Arg(8)->Arg(16);
BENCHMARK(BM_Alg2)->Arg(6)->Arg(8);
BENCHMARK(BM_Alg3)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
