#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cfaug/dataset.hpp"
#include "cfaug/resample.hpp"

namespace cfaug {

/// p + (m - p) * delta, per coordinate. delta = 0 returns p bit-exactly,
/// delta = 1 returns m bit-exactly; interior values are clamped to the closed
/// per-coordinate segment so the convexity contract survives rounding.
std::vector<double> interpolate(std::span<const double> p,
                                std::span<const double> m, double delta);

enum class NeighborhoodKind { safe, danger, noise };

/// B-SMOTE classification of a minority instance from the number of majority
/// instances among its m nearest neighbors: noise when all m are majority,
/// danger when at least half are, safe otherwise.
NeighborhoodKind classify_neighborhood(std::size_t majority_neighbors, std::size_t m);

/// ADASYN allocation: g_i proportional to majority_counts[i] / k, rounded,
/// with the rounding residue assigned among instances with nonzero ratio so
/// that the total is exactly `total`. g_i = 0 whenever majority_counts[i] = 0
/// and some other count is nonzero. Empty result when all counts are zero.
std::vector<std::size_t> adasyn_allocation(std::span<const std::size_t> majority_counts,
                                           std::size_t k, std::size_t total);

ResampleResult smote(const Dataset& ds, const ResamplePlan& plan);
ResampleResult borderline_smote(const Dataset& ds, const ResamplePlan& plan);
ResampleResult adasyn(const Dataset& ds, const ResamplePlan& plan);
ResampleResult safe_level_smote(const Dataset& ds, const ResamplePlan& plan);

}  // namespace cfaug
