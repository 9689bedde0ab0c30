#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cfaug/benchmark.hpp"
#include "cfaug/dataset.hpp"
#include "cfaug/resample.hpp"

namespace cfaug {

/// One dataset entry of a run configuration: where to load it from and how to
/// binarize it (named variants like "glass-3-vs-R" map to one entry each).
struct DatasetConfig {
  std::string name;
  std::string path;
  CsvOptions csv;
  BinarizeSpec binarize;
};

struct ClassifierGridConfig {
  std::string name;                  // "knn" | "logreg" | "rforest"
  std::vector<ClassifierSpec> grid;  // cartesian product of the config's value lists
};

/// Parsed and validated `--config` JSON document. The seed is mandatory:
/// there is no wall-clock fallback.
struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t k_folds = 5;
  std::size_t inner_folds = 3;
  std::string output_dir = "out";
  std::vector<DatasetConfig> datasets;
  std::vector<ResamplePlan> methods;
  std::vector<ClassifierGridConfig> classifiers;
};

/// Validates shape, types, ranges and that every referenced file exists.
/// Throws ErrorCode::validation with a field path on the first problem.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

/// Loads and binarizes every configured dataset.
std::vector<NamedDataset> load_datasets(const RunConfig& config);

}  // namespace cfaug
