#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfaug/dataset.hpp"

namespace cfaug {

enum class Method { baseline, smote, bsmote, adasyn, slsmote, cfa };

/// Canonical report/column order: Baseline, SMOTE, B-SMOTE, ADASYN, SL-SMOTE, CFA.
inline constexpr Method kMethodOrder[] = {Method::baseline, Method::smote,
                                          Method::bsmote,   Method::adasyn,
                                          Method::slsmote,  Method::cfa};

std::string method_tag(Method m);           // "smote", "bsmote", ...
std::string method_display_name(Method m);  // "SMOTE", "B-SMOTE", ...
Method method_from_tag(const std::string& tag);
std::size_t method_order_index(Method m);

/// Origin of one synthetic row. Indices refer to rows of the dataset the
/// resampler was given (original rows keep their positions in the output).
struct Provenance {
  Method method = Method::smote;
  std::size_t base_row = 0;      // p_i for SMOTE-family; x' for CFA
  std::size_t neighbor_row = 0;  // m'/n for SMOTE-family; paired majority x for CFA
  std::size_t template_row = 0;  // CFA only: minority template p
  double delta = 0.0;            // SMOTE-family interpolation factor
};

/// "smote:p=3;n=9;d=0.412871" / "cfa:x'=12;x=3;p=40" (CSV provenance column).
std::string provenance_string(const Provenance& p);

struct ResamplePlan {
  Method method = Method::smote;
  std::size_t k_neighbors = 5;
  std::size_t m_neighbors = 0;  // B-SMOTE danger detection; 0 = use k_neighbors
  /// Target minority count; unset = parity with the majority class.
  std::optional<std::size_t> target_count;
  std::uint64_t seed = 0;
  // CFA parameters
  double tolerance_factor = 0.1;
  std::size_t max_diffs = 2;
  bool verify = false;  // drop candidates a k-NN model predicts NEGATIVE
};

struct ResampleDiagnostics {
  std::size_t target_minority = 0;
  std::size_t achieved_minority = 0;
  std::size_t synthetic_count = 0;
  std::size_t duplicate_count = 0;  // synthetic rows identical to another synthetic
  bool fell_back_to_smote = false;
  std::string warning;

  // CFA
  std::size_t pair_count = 0;
  std::size_t paired_majority_count = 0;
  std::size_t unpaired_majority_count = 0;
  std::size_t shortfall = 0;
  std::size_t rejected_by_verifier = 0;

  // B-SMOTE
  std::size_t noise_count = 0;
  std::size_t danger_count = 0;
  std::size_t safe_count = 0;
  std::vector<std::size_t> danger_rows;

  // ADASYN
  std::vector<std::size_t> adasyn_allocation;  // g_i per minority row, ascending row order

  // SL-SMOTE
  std::size_t discarded_draws = 0;
  std::vector<std::size_t> safe_levels;  // per minority row, ascending row order
};

struct ResampleResult {
  Dataset augmented;       // original rows first and unchanged, synthetics appended
  std::size_t original_rows = 0;
  std::vector<Provenance> provenance;  // one entry per synthetic row
  ResampleDiagnostics diagnostics;

  /// Per-row provenance strings sized to the augmented dataset ("" for originals).
  std::vector<std::string> provenance_column() const;
};

/// Dispatch on plan.method; Method::baseline returns the input unchanged.
ResampleResult oversample(const Dataset& ds, const ResamplePlan& plan);

}  // namespace cfaug
