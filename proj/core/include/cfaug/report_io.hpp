#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "cfaug/benchmark.hpp"
#include "cfaug/resample.hpp"

namespace cfaug {

nlohmann::json cell_to_json(const BenchmarkCell& cell);
BenchmarkCell cell_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const BenchmarkReport& report);
BenchmarkReport report_from_json(const nlohmann::json& j);

std::string report_to_string(const BenchmarkReport& report);  // 2-space indent
BenchmarkReport report_from_string(const std::string& text);

/// Per-classifier AUC table: one row per dataset, one column per method in
/// canonical order, plus a final "Total" row of winner counts.
std::string render_auc_table(const BenchmarkReport& report, const std::string& classifier);

/// "knn: Baseline=0 SMOTE=1 ... CFA=2 (datasets=3)"
std::string winner_summary_line(const BenchmarkReport& report, const std::string& classifier);

/// "fpr,tpr,threshold" rows for one cell's curve ("inf" for the origin row).
std::string render_roc_csv(const RocCurve& curve);

nlohmann::json diagnostics_to_json(const ResampleDiagnostics& d, Method method);

}  // namespace cfaug
