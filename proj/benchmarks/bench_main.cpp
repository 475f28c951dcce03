#include <benchmark/benchmark.h>

#include "brw/montecarlo.hpp"
#include "brw/named_set.hpp"
#include "brw/solver.hpp"
#include "brw/tree.hpp"

using namespace brw;

static void BM_CompileQuotientBall(benchmark::State& state) {
  auto tree = std::make_shared<TreeGraph>(3, 0.35, 2);
  for (auto _ : state) benchmark::DoNotOptimize(compile(*tree, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CompileQuotientBall)->Arg(20)->Arg(40)->Arg(80);

static void BM_CompileExactBall(benchmark::State& state) {
  TreeGraph tree(3, 0.35);
  for (auto _ : state) benchmark::DoNotOptimize(compile(tree, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CompileExactBall)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_SweepToConvergence(benchmark::State& state) {
  auto tree = std::make_shared<TreeGraph>(3, 0.35, 2);
  const Solver s(tree, static_cast<int>(state.range(0)));
  const auto a = tree_Ty(*tree, 1);
  for (auto _ : state) {
    const auto b = s.q(a);
    state.counters["sweeps"] = static_cast<double>(b.iterations);
  }
}
BENCHMARK(BM_SweepToConvergence)->Arg(20)->Arg(30)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_QBarNearCritical(benchmark::State& state) {
  auto tree = std::make_shared<TreeGraph>(3, 0.34, 2);
  for (auto _ : state) benchmark::DoNotOptimize(compute_qbar(tree, 30));
}
BENCHMARK(BM_QBarNearCritical)->Unit(benchmark::kMillisecond);

static void BM_NoHitTrials(benchmark::State& state) {
  TreeGraph tree(3, 0.35);
  const auto a = tree_Ty(tree, 2);
  SimConfig cfg;
  cfg.trials = state.range(0);
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_no_hit(tree, tree.root(), a, 30, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NoHitTrials)->Arg(1000)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
