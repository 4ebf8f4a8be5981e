#include <benchmark/benchmark.h>

#include "cohsys/decision.hpp"

using namespace cohsys;

static void BM_CriticalValues(benchmark::State& state) {
  const CurveContext ctx(Integer(state.range(0)));
  const Integer n(state.range(1));
  const Integer d(4 * state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(critical_value_candidates(ctx, n, d));
}
BENCHMARK(BM_CriticalValues)->Args({6, 4})->Args({20, 6})->Args({40, 10});

static void BM_Cardinality(benchmark::State& state) {
  // beta = 0 at d = g + n - g/(n+1) when (n+1) | g
  const long n = state.range(1), g = state.range(0) * (n + 1);
  const CurveContext ctx{Integer(g)};
  const Integer d(g + n - g / (n + 1));
  for (auto _ : state) benchmark::DoNotOptimize(cardinality_beta_zero(ctx, Integer(n), d));
}
BENCHMARK(BM_Cardinality)->Args({2, 1})->Args({10, 2})->Args({50, 4});

static void BM_EvaluateColumn(benchmark::State& state) {
  const CurveContext ctx(Integer(state.range(0)));
  const Integer n(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_column(ctx, n, Integer(0), Integer(80), RuleSet::full()));
  }
}
BENCHMARK(BM_EvaluateColumn)->Args({3, 4})->Args({5, 8})->Args({20, 8});

static void BM_Sweep(benchmark::State& state) {
  SweepRequest req;
  req.genus = {Integer(0), Integer(state.range(0))};
  req.rank = {Integer(1), Integer(8)};
  req.degree = {Integer(-10), Integer(80)};
  for (auto _ : state) benchmark::DoNotOptimize(sweep(req));
  state.SetItemsProcessed(state.iterations() * (state.range(0) + 1) * 8 * 91);
}
BENCHMARK(BM_Sweep)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
