#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cfaug/classifiers.hpp"
#include "cfaug/dataset.hpp"
#include "cfaug/evaluation.hpp"
#include "cfaug/resample.hpp"

namespace cfaug {

struct NamedDataset {
  std::string name;
  Dataset data;  // binarized
};

struct ClassifierGrid {
  std::string name;  // "knn", "logreg", "rforest"
  std::vector<ClassifierSpec> grid;
};

struct BenchmarkSettings {
  std::size_t k_folds = 5;
  std::size_t inner_folds = 3;  // grid-search CV inside each training split
  std::size_t jobs = 1;
  std::uint64_t seed = 0;
};

/// One (dataset, method, classifier, fold) evaluation. Raw test-fold
/// predictions are retained so every metric can be recomputed from the report.
struct BenchmarkCell {
  std::string dataset;
  std::string classifier;
  Method method = Method::baseline;
  std::size_t fold = 0;
  std::uint64_t seed = 0;

  std::string error;  // non-empty: the cell failed and carries no results
  ClassifierSpec chosen;
  std::vector<Label> actual;
  std::vector<double> scores;
  ConfusionMatrix cm;
  MetricSet metric;
  RocCurve roc_curve;
};

struct MethodSummary {
  std::string dataset;
  std::string classifier;
  Method method = Method::baseline;
  std::size_t folds_ok = 0;
  MetricSet mean;
  MetricSet stddev;  // population std over the successful folds
  bool winner = false;  // highest mean AUC for (dataset, classifier); ties by method order
};

struct BenchmarkReport {
  int schema_version = 1;
  std::uint64_t seed = 0;
  std::size_t k_folds = 0;
  std::size_t inner_folds = 0;
  std::vector<std::string> dataset_names;
  std::vector<std::string> classifier_names;
  std::vector<Method> methods;  // canonical order, baseline always present
  std::vector<BenchmarkCell> cells;
  std::vector<MethodSummary> summaries;
};

/// Everything a leakage audit needs about one finished cell, valid only for
/// the duration of the callback. With jobs > 1 the callback runs on worker
/// threads and must be thread-safe.
struct CellAudit {
  const BenchmarkCell& cell;
  std::span<const std::size_t> train_rows;  // global row indices
  std::span<const std::size_t> test_rows;
  const ResampleResult& resampled;          // training split after oversampling
  const Dataset& full_dataset;
};
using AuditFn = std::function<void(const CellAudit&)>;

/// Optional persistent per-cell store so interrupted sweeps resume.
class CellCache {
public:
  virtual ~CellCache() = default;
  virtual std::optional<nlohmann::json> load(const std::string& key) = 0;
  virtual void store(const std::string& key, const nlohmann::json& cell) = 0;
};

/// Filesystem cache: one JSON file per cell under `directory`.
class FileCellCache : public CellCache {
public:
  explicit FileCellCache(std::string directory);
  std::optional<nlohmann::json> load(const std::string& key) override;
  void store(const std::string& key, const nlohmann::json& cell) override;

private:
  std::string directory_;
};

/// Runs the (dataset x method x classifier x fold) grid. Resampling touches
/// training folds only; grid search runs nested inside each training split.
/// A Baseline method is prepended when absent. Cell failures are recorded in
/// the cell and the sweep continues.
BenchmarkReport run_benchmark(std::span<const NamedDataset> datasets,
                              std::span<const ResamplePlan> methods,
                              std::span<const ClassifierGrid> classifiers,
                              const BenchmarkSettings& settings,
                              CellCache* cache = nullptr,
                              const AuditFn& audit = {});

/// Recomputes cells' metrics from their stored predictions and rebuilds the
/// summary/winner block. Idempotent: a report round-tripped through JSON
/// summarizes to identical bytes.
void summarize_report(BenchmarkReport& report);

}  // namespace cfaug
