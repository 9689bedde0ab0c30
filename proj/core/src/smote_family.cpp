#include "cfaug/smote_family.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cfaug/cf_engine.hpp"
#include "cfaug/error.hpp"
#include "cfaug/random.hpp"

namespace cfaug {

std::vector<double> interpolate(std::span<const double> p, std::span<const double> m,
                                double delta) {
  if (p.size() != m.size()) throw Error::validation("interpolate: dimension mismatch");
  std::vector<double> out(p.size());
  if (delta == 0.0) {
    std::copy(p.begin(), p.end(), out.begin());
    return out;
  }
  if (delta == 1.0) {
    std::copy(m.begin(), m.end(), out.begin());
    return out;
  }
  for (std::size_t f = 0; f < p.size(); ++f) {
    const double lo = std::min(p[f], m[f]);
    const double hi = std::max(p[f], m[f]);
    out[f] = std::clamp(p[f] + (m[f] - p[f]) * delta, lo, hi);
  }
  return out;
}

NeighborhoodKind classify_neighborhood(std::size_t majority_neighbors, std::size_t m) {
  if (m == 0) throw Error::validation("classify_neighborhood: m must be >= 1");
  if (majority_neighbors > m)
    throw Error::validation("classify_neighborhood: count exceeds m");
  if (majority_neighbors == m) return NeighborhoodKind::noise;
  // real-valued comparison: m' >= m/2, so m=5, m'=3 is danger
  if (2 * majority_neighbors >= m) return NeighborhoodKind::danger;
  return NeighborhoodKind::safe;
}

std::vector<std::size_t> adasyn_allocation(std::span<const std::size_t> majority_counts,
                                           std::size_t k, std::size_t total) {
  if (k == 0) throw Error::validation("adasyn_allocation: k must be >= 1");
  const std::size_t n = majority_counts.size();
  std::vector<std::size_t> g(n, 0);
  double r_sum = 0.0;
  for (std::size_t c : majority_counts) r_sum += static_cast<double>(c) / static_cast<double>(k);
  if (r_sum == 0.0) return {};  // separable at k; caller decides the fallback

  std::vector<double> r_hat(n);
  for (std::size_t i = 0; i < n; ++i)
    r_hat[i] = (static_cast<double>(majority_counts[i]) / static_cast<double>(k)) / r_sum;

  long long allocated = 0;
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = static_cast<std::size_t>(std::llround(r_hat[i] * static_cast<double>(total)));
    allocated += static_cast<long long>(g[i]);
  }

  // rounding residue goes to instances with nonzero ratio, largest first,
  // so g_i stays 0 wherever majority_counts[i] is 0
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (r_hat[i] > 0.0) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (r_hat[a] != r_hat[b]) return r_hat[a] > r_hat[b];
    return a < b;
  });

  long long residue = static_cast<long long>(total) - allocated;
  std::size_t cursor = 0;
  while (residue > 0) {
    g[order[cursor % order.size()]]++;
    ++cursor;
    --residue;
  }
  cursor = 0;
  while (residue < 0) {
    const std::size_t i = order[order.size() - 1 - (cursor % order.size())];
    if (g[i] > 0) {
      g[i]--;
      ++residue;
    }
    ++cursor;
  }
  return g;
}

namespace {

struct NeighborIndex {
  // scaled matrix rows for distance work; raw rows for synthesis
  const Dataset& raw;
  Dataset scaled;
  std::vector<std::size_t> minority_rows;  // ascending
  std::vector<std::size_t> majority_rows;

  explicit NeighborIndex(const Dataset& ds)
      : raw(ds),
        scaled(min_max_scale(ds, feature_stats(ds))),
        minority_rows(ds.rows_with(Label::positive)),
        majority_rows(ds.rows_with(Label::negative)) {}

  /// k nearest rows to `query` among `candidates`, self excluded,
  /// ordered by (distance, row index).
  std::vector<std::size_t> k_nearest(std::size_t query,
                                     std::span<const std::size_t> candidates,
                                     std::size_t k) const {
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(candidates.size());
    for (std::size_t c : candidates) {
      if (c == query) continue;
      dist.emplace_back(euclidean(scaled.row(query), scaled.row(c)), c);
    }
    const std::size_t take = std::min(k, dist.size());
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(take), dist.end());
    std::vector<std::size_t> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.push_back(dist[i].second);
    return out;
  }

  std::size_t majority_among_nearest(std::size_t query, std::size_t m) const {
    std::vector<std::size_t> all(raw.n_instances());
    std::iota(all.begin(), all.end(), std::size_t{0});
    auto nn = k_nearest(query, all, m);
    std::size_t majority = 0;
    for (std::size_t r : nn)
      if (raw.label(r) == Label::negative) ++majority;
    return majority;
  }
};

void check_common_preconditions(const Dataset& ds, const ResamplePlan& plan) {
  if (!ds.is_binary()) throw Error::validation("oversample needs a binarized dataset");
  if (plan.k_neighbors == 0) throw Error::validation("k_neighbors must be >= 1");
  const std::size_t n_min = ds.n_positive();
  if (n_min <= 1)
    throw Error::validation("minority class of size " + std::to_string(n_min) +
                            ": no neighbor exists");
  if (n_min <= plan.k_neighbors)
    throw Error::validation("minority count " + std::to_string(n_min) +
                            " must exceed k_neighbors " + std::to_string(plan.k_neighbors));
}

std::size_t resolve_target(const Dataset& ds, const ResamplePlan& plan) {
  const std::size_t n_min = ds.n_positive();
  const std::size_t target = plan.target_count.value_or(ds.n_negative());
  if (target < n_min)
    throw Error::validation("target minority count " + std::to_string(target) +
                            " is smaller than the current minority count " + std::to_string(n_min));
  return target;
}

ResampleResult start_result(const Dataset& ds, std::size_t target) {
  ResampleResult out;
  std::vector<std::size_t> all(ds.n_instances());
  std::iota(all.begin(), all.end(), std::size_t{0});
  out.augmented = ds.subset(all);
  out.original_rows = ds.n_instances();
  out.diagnostics.target_minority = target;
  return out;
}

void finish_result(ResampleResult& result) {
  auto& d = result.diagnostics;
  d.synthetic_count = result.augmented.n_instances() - result.original_rows;
  d.achieved_minority = result.augmented.n_positive();

  std::vector<std::vector<double>> rows;
  rows.reserve(d.synthetic_count);
  for (std::size_t i = result.original_rows; i < result.augmented.n_instances(); ++i) {
    auto r = result.augmented.row(i);
    rows.emplace_back(r.begin(), r.end());
  }
  std::sort(rows.begin(), rows.end());
  d.duplicate_count =
      rows.size() - static_cast<std::size_t>(std::distance(rows.begin(), std::unique(rows.begin(), rows.end())));
}

/// Shared Eq.-style generation loop: repeatedly pick a base row from `bases`,
/// one of its k nearest minority neighbors, and a delta, until `needed`
/// synthetics exist.
void generate_interpolated(ResampleResult& result, const NeighborIndex& index,
                           std::span<const std::size_t> bases, std::size_t k,
                           std::size_t needed, Method method, Rng& rng) {
  if (needed == 0 || bases.empty()) return;

  std::vector<std::vector<std::size_t>> neighbor_cache(bases.size());
  std::uniform_int_distribution<std::size_t> pick_base(0, bases.size() - 1);
  std::uniform_real_distribution<double> pick_delta(0.0, 1.0);

  for (std::size_t made = 0; made < needed; ++made) {
    const std::size_t b = pick_base(rng);
    const std::size_t base_row = bases[b];
    auto& neighbors = neighbor_cache[b];
    if (neighbors.empty())
      neighbors = index.k_nearest(base_row, index.minority_rows, k);
    std::uniform_int_distribution<std::size_t> pick_neighbor(0, neighbors.size() - 1);
    const std::size_t neighbor_row = neighbors[pick_neighbor(rng)];
    const double delta = pick_delta(rng);

    auto values = interpolate(index.raw.row(base_row), index.raw.row(neighbor_row), delta);
    result.augmented.append_row(values, 1);
    result.provenance.push_back({method, base_row, neighbor_row, 0, delta});
  }
}

}  // namespace

ResampleResult smote(const Dataset& ds, const ResamplePlan& plan) {
  check_common_preconditions(ds, plan);
  const std::size_t target = resolve_target(ds, plan);
  ResampleResult result = start_result(ds, target);

  NeighborIndex index(ds);
  Rng rng(splitmix64(plan.seed));
  generate_interpolated(result, index, index.minority_rows, plan.k_neighbors,
                        target - ds.n_positive(), Method::smote, rng);
  finish_result(result);
  return result;
}

ResampleResult borderline_smote(const Dataset& ds, const ResamplePlan& plan) {
  check_common_preconditions(ds, plan);
  const std::size_t target = resolve_target(ds, plan);
  const std::size_t m = plan.m_neighbors == 0 ? plan.k_neighbors : plan.m_neighbors;

  NeighborIndex index(ds);
  ResampleResult result = start_result(ds, target);
  auto& diag = result.diagnostics;

  for (std::size_t p : index.minority_rows) {
    const std::size_t m_prime = index.majority_among_nearest(p, m);
    switch (classify_neighborhood(m_prime, m)) {
      case NeighborhoodKind::noise: diag.noise_count++; break;
      case NeighborhoodKind::danger:
        diag.danger_count++;
        diag.danger_rows.push_back(p);
        break;
      case NeighborhoodKind::safe: diag.safe_count++; break;
    }
  }

  Rng rng(splitmix64(plan.seed));
  if (diag.danger_rows.empty()) {
    diag.fell_back_to_smote = true;
    diag.warning = "DANGER set is empty; fell back to plain SMOTE";
    generate_interpolated(result, index, index.minority_rows, plan.k_neighbors,
                          target - ds.n_positive(), Method::bsmote, rng);
  } else {
    generate_interpolated(result, index, diag.danger_rows, plan.k_neighbors,
                          target - ds.n_positive(), Method::bsmote, rng);
  }
  finish_result(result);
  return result;
}

ResampleResult adasyn(const Dataset& ds, const ResamplePlan& plan) {
  check_common_preconditions(ds, plan);
  const std::size_t target = resolve_target(ds, plan);

  NeighborIndex index(ds);
  ResampleResult result = start_result(ds, target);
  auto& diag = result.diagnostics;
  const std::size_t needed = target - ds.n_positive();

  std::vector<std::size_t> majority_counts;
  majority_counts.reserve(index.minority_rows.size());
  for (std::size_t p : index.minority_rows)
    majority_counts.push_back(index.majority_among_nearest(p, plan.k_neighbors));

  diag.adasyn_allocation = adasyn_allocation(majority_counts, plan.k_neighbors, needed);

  Rng rng(splitmix64(plan.seed));
  if (diag.adasyn_allocation.empty()) {
    diag.fell_back_to_smote = true;
    diag.warning = "no minority instance has a majority neighbor at k=" +
                   std::to_string(plan.k_neighbors) + "; fell back to plain SMOTE";
    generate_interpolated(result, index, index.minority_rows, plan.k_neighbors,
                          needed, Method::adasyn, rng);
    finish_result(result);
    return result;
  }

  std::uniform_real_distribution<double> pick_delta(0.0, 1.0);
  for (std::size_t i = 0; i < index.minority_rows.size(); ++i) {
    const std::size_t base_row = index.minority_rows[i];
    if (diag.adasyn_allocation[i] == 0) continue;
    auto neighbors = index.k_nearest(base_row, index.minority_rows, plan.k_neighbors);
    std::uniform_int_distribution<std::size_t> pick_neighbor(0, neighbors.size() - 1);
    for (std::size_t g = 0; g < diag.adasyn_allocation[i]; ++g) {
      const std::size_t neighbor_row = neighbors[pick_neighbor(rng)];
      const double delta = pick_delta(rng);
      auto values = interpolate(ds.row(base_row), ds.row(neighbor_row), delta);
      result.augmented.append_row(values, 1);
      result.provenance.push_back({Method::adasyn, base_row, neighbor_row, 0, delta});
    }
  }
  finish_result(result);
  return result;
}

ResampleResult safe_level_smote(const Dataset& ds, const ResamplePlan& plan) {
  check_common_preconditions(ds, plan);
  const std::size_t target = resolve_target(ds, plan);

  NeighborIndex index(ds);
  ResampleResult result = start_result(ds, target);
  auto& diag = result.diagnostics;
  const std::size_t needed = target - ds.n_positive();

  // safe level = minority count among the k nearest neighbors in the whole set
  std::vector<std::size_t> safe_level;
  safe_level.reserve(index.minority_rows.size());
  for (std::size_t p : index.minority_rows)
    safe_level.push_back(plan.k_neighbors - index.majority_among_nearest(p, plan.k_neighbors));
  diag.safe_levels = safe_level;

  std::vector<std::vector<std::size_t>> neighbor_cache(index.minority_rows.size());
  std::vector<std::size_t> row_to_slot(ds.n_instances(), 0);
  for (std::size_t i = 0; i < index.minority_rows.size(); ++i)
    row_to_slot[index.minority_rows[i]] = i;

  Rng rng(splitmix64(plan.seed));
  std::uniform_int_distribution<std::size_t> pick_base(0, index.minority_rows.size() - 1);
  const std::size_t discard_limit = 1000 * std::max<std::size_t>(needed, 1);
  std::size_t consecutive_discards = 0;
  std::size_t made = 0;

  while (made < needed) {
    if (consecutive_discards >= discard_limit)
      throw Error::algorithm("safe-level SMOTE made no progress after " +
                             std::to_string(consecutive_discards) +
                             " consecutive discarded draws (all sampled pairs unsafe)");

    const std::size_t b = pick_base(rng);
    const std::size_t base_row = index.minority_rows[b];
    auto& neighbors = neighbor_cache[b];
    if (neighbors.empty())
      neighbors = index.k_nearest(base_row, index.minority_rows, plan.k_neighbors);
    std::uniform_int_distribution<std::size_t> pick_neighbor(0, neighbors.size() - 1);
    const std::size_t neighbor_row = neighbors[pick_neighbor(rng)];

    const std::size_t sl_p = safe_level[b];
    const std::size_t sl_n = safe_level[row_to_slot[neighbor_row]];

    double delta;
    if (sl_p == 0 && sl_n == 0) {
      diag.discarded_draws++;
      consecutive_discards++;
      continue;  // both endpoints unsafe
    } else if (sl_n == 0) {
      delta = 0.0;  // ratio = infinity: duplicate the safe base
    } else if (sl_p == 0) {
      delta = 1.0;  // ratio = 0: the [1 - ratio, 1) interval collapses onto the safe neighbor
    } else {
      const double ratio = static_cast<double>(sl_p) / static_cast<double>(sl_n);
      if (ratio == 1.0) {
        delta = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      } else if (ratio > 1.0) {
        delta = std::uniform_real_distribution<double>(0.0, 1.0 / ratio)(rng);
      } else {
        delta = std::uniform_real_distribution<double>(1.0 - ratio, 1.0)(rng);
      }
    }
    consecutive_discards = 0;

    auto values = interpolate(ds.row(base_row), ds.row(neighbor_row), delta);
    result.augmented.append_row(values, 1);
    result.provenance.push_back({Method::slsmote, base_row, neighbor_row, 0, delta});
    ++made;
  }
  finish_result(result);
  return result;
}

}  // namespace cfaug
