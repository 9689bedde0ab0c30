#include <benchmark/benchmark.h>

#include "bench_support.hpp"
#include "cfaug/cf_engine.hpp"
#include "cfaug/resample.hpp"
#include "cfaug/smote_family.hpp"

using namespace cfaug;

static void BM_ComputeCfSet(benchmark::State& state) {
  const Dataset ds = bench::blobs(static_cast<std::size_t>(state.range(0)));
  const ToleranceTable tol = make_tolerance(feature_stats(ds), 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_cf_set(ds, tol, 2));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ComputeCfSet)->Arg(220)->Arg(550)->Arg(1100)->Arg(2200)->Complexity();

static void BM_CfaOversample(benchmark::State& state) {
  const Dataset ds = bench::blobs(static_cast<std::size_t>(state.range(0)));
  CfaOptions opt;
  opt.tolerance_factor = 0.02;
  opt.max_diffs = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cfa_oversample(ds, opt));
  }
}
BENCHMARK(BM_CfaOversample)->Arg(550)->Arg(1100);

static void BM_Oversample(benchmark::State& state) {
  const Dataset ds = bench::blobs(1100);
  ResamplePlan plan;
  plan.method = static_cast<Method>(state.range(0));
  plan.k_neighbors = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oversample(ds, plan));
  }
  state.SetLabel(method_tag(plan.method));
}
BENCHMARK(BM_Oversample)
    ->Arg(static_cast<int>(Method::smote))
    ->Arg(static_cast<int>(Method::bsmote))
    ->Arg(static_cast<int>(Method::adasyn))
    ->Arg(static_cast<int>(Method::slsmote));
