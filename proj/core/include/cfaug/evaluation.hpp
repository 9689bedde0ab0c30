#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cfaug/dataset.hpp"

namespace cfaug {

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
};

ConfusionMatrix confusion(std::span<const Label> actual,
                          std::span<const Label> predicted);

struct MetricSet {
  double recall = 0.0;             // TP / (TP + FN)
  double precision = 0.0;          // TP / (TP + FP)
  double f1 = 0.0;                 // harmonic mean; 0 when precision + recall = 0
  double balanced_accuracy = 0.0;  // (TPR + TNR) / 2
  double roc_auc = 0.0;            // trapezoidal, filled by roc()
  bool recall_degenerate = false;     // 0/0 denominators reported as 0
  bool precision_degenerate = false;
};

/// Scalar metrics from counts (roc_auc left untouched). 0/0 cases return 0
/// with the matching degenerate flag set.
MetricSet metrics(const ConfusionMatrix& cm);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;  // +inf for the (0,0) origin point
};

/// Threshold sweep over distinct scores descending, ties grouped; both
/// coordinates are non-decreasing, from (0,0) to (1,1).
struct RocCurve {
  std::vector<RocPoint> points;
};

struct RocResult {
  RocCurve curve;
  double auc = 0.0;
};

/// Requires both classes present. The trapezoidal AUC equals the
/// Mann-Whitney pair-ranking probability with ties counted half.
RocResult roc(std::span<const Label> actual, std::span<const double> scores);

}  // namespace cfaug
