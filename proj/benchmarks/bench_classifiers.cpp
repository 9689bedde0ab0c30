#include <benchmark/benchmark.h>

#include "bench_support.hpp"
#include "cfaug/classifiers.hpp"
#include "cfaug/evaluation.hpp"

using namespace cfaug;

static void BM_TrainForest(benchmark::State& state) {
  const Dataset ds = bench::blobs(770);
  ClassifierSpec spec;
  spec.kind = ClassifierKind::rforest;
  spec.n_trees = static_cast<std::size_t>(state.range(0));
  spec.max_depth = 10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(train(spec, ds));
  }
}
BENCHMARK(BM_TrainForest)->Arg(50)->Arg(200);

static void BM_TrainLogReg(benchmark::State& state) {
  const Dataset ds = bench::blobs(770);
  ClassifierSpec spec;
  spec.kind = ClassifierKind::logreg;
  spec.max_iter = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(train(spec, ds));
  }
}
BENCHMARK(BM_TrainLogReg)->Arg(200)->Arg(1000);

static void BM_KnnScore(benchmark::State& state) {
  const Dataset ds = bench::blobs(static_cast<std::size_t>(state.range(0)));
  ClassifierSpec spec;
  spec.kind = ClassifierKind::knn;
  spec.n_neighbors = 5;
  const TrainedModel model = train(spec, ds);
  const std::vector<double> query{0.5, 0.5, 0.5, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.score(query));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KnnScore)->Arg(550)->Arg(1100)->Arg(2200)->Complexity();

static void BM_RocAuc(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Label> actual(n);
  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    actual[i] = i % 11 == 0 ? Label::positive : Label::negative;
    scores[i] = uniform(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(roc(actual, scores));
  }
}
BENCHMARK(BM_RocAuc)->Arg(1000)->Arg(10000);
