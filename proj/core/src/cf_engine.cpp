#include "cfaug/cf_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "cfaug/error.hpp"
#include "cfaug/random.hpp"

namespace cfaug {

ToleranceTable make_tolerance(const FeatureStats& stats, double factor) {
  if (factor < 0.0) throw Error::validation("tolerance factor must be >= 0");
  ToleranceTable t;
  t.factor = factor;
  t.thresholds.reserve(stats.n_features());
  for (double sd : stats.stddev) t.thresholds.push_back(factor * sd);
  return t;
}

std::vector<std::size_t> differing_features(std::span<const double> a,
                                            std::span<const double> b,
                                            const ToleranceTable& tol) {
  if (a.size() != b.size())
    throw Error::validation("differing_features: dimension mismatch");
  if (tol.thresholds.size() != a.size())
    throw Error::validation("differing_features: tolerance table does not cover all features");
  std::vector<std::size_t> diffs;
  for (std::size_t f = 0; f < a.size(); ++f)
    if (std::abs(a[f] - b[f]) > tol.thresholds[f]) diffs.push_back(f);
  return diffs;
}

std::vector<std::size_t> CFPair::match_features(std::size_t n_features) const {
  std::vector<std::size_t> match;
  match.reserve(n_features - diff_features.size());
  auto it = diff_features.begin();
  for (std::size_t f = 0; f < n_features; ++f) {
    if (it != diff_features.end() && *it == f) {
      ++it;
    } else {
      match.push_back(f);
    }
  }
  return match;
}

CFSet compute_cf_set(const Dataset& ds, const ToleranceTable& tol, std::size_t max_diffs) {
  if (!ds.is_binary()) throw Error::validation("compute_cf_set needs a binarized dataset");
  if (max_diffs == 0) throw Error::validation("max_diffs must be >= 1");
  const auto majority = ds.rows_with(Label::negative);
  const auto minority = ds.rows_with(Label::positive);
  if (majority.empty() || minority.empty())
    throw Error::validation("compute_cf_set needs both classes non-empty");

  CFSet cf;
  for (std::size_t x : majority) {
    bool paired = false;
    for (std::size_t p : minority) {
      auto diffs = differing_features(ds.row(x), ds.row(p), tol);
      if (!diffs.empty() && diffs.size() <= max_diffs) {
        cf.pairs.push_back({x, p, std::move(diffs)});
        paired = true;
      }
    }
    if (paired) {
      cf.paired_majority.push_back(x);
    } else {
      cf.unpaired_majority.push_back(x);
    }
  }
  return cf;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error::validation("euclidean: dimension mismatch");
  double sum = 0.0;
  for (std::size_t f = 0; f < a.size(); ++f) {
    const double d = a[f] - b[f];
    sum += d * d;
  }
  return std::sqrt(sum);
}

std::size_t nearest_paired(std::span<const double> query, const CFSet& cf,
                           const Dataset& points) {
  if (cf.pairs.empty()) throw Error::algorithm("E_NO_PAIRS: the CF-Set is empty");

  // nearest majority member first (ties: lowest row), then nearest minority
  // member among that majority's pairs (ties: lowest row)
  double best_x_dist = std::numeric_limits<double>::infinity();
  std::size_t best_x_row = 0;
  bool have_x = false;
  std::map<std::size_t, double> x_dist;
  for (const auto& pair : cf.pairs) {
    auto [it, inserted] = x_dist.try_emplace(pair.majority_row, 0.0);
    if (inserted) it->second = euclidean(query, points.row(pair.majority_row));
    const double d = it->second;
    if (!have_x || d < best_x_dist || (d == best_x_dist && pair.majority_row < best_x_row)) {
      best_x_dist = d;
      best_x_row = pair.majority_row;
      have_x = true;
    }
  }

  double best_p_dist = std::numeric_limits<double>::infinity();
  std::size_t best_index = cf.pairs.size();
  for (std::size_t i = 0; i < cf.pairs.size(); ++i) {
    const auto& pair = cf.pairs[i];
    if (pair.majority_row != best_x_row) continue;
    const double d = euclidean(query, points.row(pair.minority_row));
    if (best_index == cf.pairs.size() || d < best_p_dist ||
        (d == best_p_dist && pair.minority_row < cf.pairs[best_index].minority_row)) {
      best_p_dist = d;
      best_index = i;
    }
  }
  return best_index;
}

std::size_t nearest_paired(std::size_t x_prime_row, const CFSet& cf, const Dataset& points) {
  return nearest_paired(points.row(x_prime_row), cf, points);
}

SyntheticInstance synthesize(std::size_t x_prime_row, const CFPair& pair, const Dataset& ds) {
  SyntheticInstance out;
  out.source_row = x_prime_row;
  out.majority_row = pair.majority_row;
  out.minority_row = pair.minority_row;

  auto x_prime = ds.row(x_prime_row);
  auto p = ds.row(pair.minority_row);
  out.values.assign(x_prime.begin(), x_prime.end());
  for (std::size_t f : pair.diff_features) out.values[f] = p[f];
  return out;
}

ResampleResult cfa_oversample(const Dataset& ds, const CfaOptions& options) {
  if (!ds.is_binary()) throw Error::validation("cfa_oversample needs a binarized dataset");
  const std::size_t n_min = ds.n_positive();
  const std::size_t n_maj = ds.n_negative();
  if (n_min == 0 || n_maj == 0)
    throw Error::validation("cfa_oversample needs both classes non-empty");

  const std::size_t target = options.target_count.value_or(n_maj);
  if (target < n_min)
    throw Error::validation("target minority count " + std::to_string(target) +
                            " is smaller than the current minority count " + std::to_string(n_min));

  const FeatureStats stats = feature_stats(ds);
  const ToleranceTable tol = make_tolerance(stats, options.tolerance_factor);
  const CFSet cf = compute_cf_set(ds, tol, options.max_diffs);

  ResampleResult result;
  result.original_rows = ds.n_instances();
  result.diagnostics.pair_count = cf.pairs.size();
  result.diagnostics.paired_majority_count = cf.paired_majority.size();
  result.diagnostics.unpaired_majority_count = cf.unpaired_majority.size();
  result.diagnostics.target_minority = target;

  const std::size_t needed = target - n_min;
  if (needed > 0 && cf.pairs.empty()) {
    std::ostringstream msg;
    msg << "E_NO_PAIRS: no native counterfactual pairs under tolerance factor "
        << options.tolerance_factor << " with max_diffs " << options.max_diffs
        << " (majority=" << n_maj << ", minority=" << n_min
        << ", unpaired=" << cf.unpaired_majority.size() << ")";
    throw Error::algorithm(msg.str());
  }

  // one candidate per unpaired majority instance, ascending row order
  const Dataset scaled = min_max_scale(ds, stats);
  std::vector<SyntheticInstance> candidates;
  candidates.reserve(cf.unpaired_majority.size());
  if (needed > 0) {
    for (std::size_t x_prime : cf.unpaired_majority) {
      const std::size_t pair_index = nearest_paired(x_prime, cf, scaled);
      candidates.push_back(synthesize(x_prime, cf.pairs[pair_index], ds));
    }
  }

  if (options.verify) {
    std::vector<SyntheticInstance> kept;
    kept.reserve(candidates.size());
    for (auto& c : candidates) {
      if (options.verify(c.values)) {
        kept.push_back(std::move(c));
      } else {
        result.diagnostics.rejected_by_verifier++;
      }
    }
    candidates = std::move(kept);
  }

  std::vector<SyntheticInstance> accepted;
  if (candidates.size() > needed) {
    Rng rng(splitmix64(options.seed));
    std::sample(candidates.begin(), candidates.end(), std::back_inserter(accepted),
                needed, rng);
  } else {
    accepted = std::move(candidates);
    result.diagnostics.shortfall = needed - accepted.size();
  }

  result.augmented = ds.subset([&] {
    std::vector<std::size_t> all(ds.n_instances());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
  }());
  for (const auto& s : accepted) {
    result.augmented.append_row(s.values, 1);
    result.provenance.push_back({Method::cfa, s.source_row, s.majority_row, s.minority_row, 0.0});
  }

  // duplicate synthetics are kept; the count is informational
  std::vector<std::vector<double>> rows;
  rows.reserve(accepted.size());
  for (const auto& s : accepted) rows.push_back(s.values);
  std::sort(rows.begin(), rows.end());
  result.diagnostics.duplicate_count =
      rows.size() - static_cast<std::size_t>(std::distance(rows.begin(), std::unique(rows.begin(), rows.end())));

  result.diagnostics.synthetic_count = accepted.size();
  result.diagnostics.achieved_minority = n_min + accepted.size();
  return result;
}

}  // namespace cfaug
