#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cfaug/dataset.hpp"
#include "cfaug/resample.hpp"

namespace cfaug {

/// Per-feature matching slack: threshold[f] = factor * stddev[f].
/// A zero threshold (constant feature) admits only exact equality.
struct ToleranceTable {
  double factor = 0.1;
  std::vector<double> thresholds;
};

ToleranceTable make_tolerance(const FeatureStats& stats, double factor = 0.1);

/// Feature ids where |a[f] - b[f]| > threshold[f], ascending. Symmetric in (a, b).
std::vector<std::size_t> differing_features(std::span<const double> a,
                                            std::span<const double> b,
                                            const ToleranceTable& tol);

/// A native counterfactual pair: a majority row and a minority row that match
/// on every feature except 1..max_diffs difference-features.
struct CFPair {
  std::size_t majority_row = 0;
  std::size_t minority_row = 0;
  std::vector<std::size_t> diff_features;  // ascending

  std::vector<std::size_t> match_features(std::size_t n_features) const;
};

struct CFSet {
  std::vector<CFPair> pairs;                  // ordered by (majority_row, minority_row)
  std::vector<std::size_t> paired_majority;   // ascending, unique
  std::vector<std::size_t> unpaired_majority; // ascending; complement within the majority
};

/// Exhaustive mining over all (majority, minority) row combinations.
CFSet compute_cf_set(const Dataset& ds, const ToleranceTable& tol,
                     std::size_t max_diffs = 2);

double euclidean(std::span<const double> a, std::span<const double> b);

/// Index into cf.pairs of the pair whose majority member is nearest to the
/// query (distances over `points`, normally the min-max-scaled matrix).
/// Ties: nearest minority member, then lowest (majority_row, minority_row).
std::size_t nearest_paired(std::span<const double> query, const CFSet& cf,
                           const Dataset& points);
std::size_t nearest_paired(std::size_t x_prime_row, const CFSet& cf,
                           const Dataset& points);

struct SyntheticInstance {
  std::vector<double> values;  // raw feature units
  std::size_t source_row = 0;    // x'
  std::size_t majority_row = 0;  // x of the template pair
  std::size_t minority_row = 0;  // p of the template pair
};

/// Step-3 transfer: difference-feature values come from the pair's minority
/// member p, match-feature values from the unpaired instance x'. Every output
/// value is copied bit-exactly from one of the two rows.
SyntheticInstance synthesize(std::size_t x_prime_row, const CFPair& pair,
                             const Dataset& ds);

struct CfaOptions {
  double tolerance_factor = 0.1;
  std::size_t max_diffs = 2;
  std::optional<std::size_t> target_count;  // unset = parity
  std::uint64_t seed = 0;
  /// Optional label check: candidates for which this returns false
  /// (predicted NEGATIVE) are dropped before trimming.
  std::function<bool(std::span<const double>)> verify;
};

/// One candidate per unpaired majority row, in ascending row order; a seeded
/// uniform subsample trims overshoot to the target, shortfall is reported
/// (never interpolated away). Throws ErrorCode::algorithm ("E_NO_PAIRS") when
/// synthesis is required but the CF-Set is empty.
ResampleResult cfa_oversample(const Dataset& ds, const CfaOptions& options);

}  // namespace cfaug
