#include "cfaug/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cfaug/error.hpp"

namespace cfaug {

ConfusionMatrix confusion(std::span<const Label> actual, std::span<const Label> predicted) {
  if (actual.size() != predicted.size())
    throw Error::validation("confusion: label vectors differ in length");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i] == Label::positive) {
      predicted[i] == Label::positive ? ++cm.tp : ++cm.fn;
    } else {
      predicted[i] == Label::positive ? ++cm.fp : ++cm.tn;
    }
  }
  return cm;
}

MetricSet metrics(const ConfusionMatrix& cm) {
  MetricSet m;
  const double tp = static_cast<double>(cm.tp);
  const double fn = static_cast<double>(cm.fn);
  const double fp = static_cast<double>(cm.fp);
  const double tn = static_cast<double>(cm.tn);

  if (cm.tp + cm.fn == 0) {
    m.recall = 0.0;
    m.recall_degenerate = true;
  } else {
    m.recall = tp / (tp + fn);
  }
  if (cm.tp + cm.fp == 0) {
    m.precision = 0.0;
    m.precision_degenerate = true;
  } else {
    m.precision = tp / (tp + fp);
  }
  m.f1 = (m.precision + m.recall) == 0.0
             ? 0.0
             : 2.0 * m.precision * m.recall / (m.precision + m.recall);

  const double tpr = m.recall;
  const double tnr = cm.fp + cm.tn == 0 ? 0.0 : tn / (fp + tn);
  m.balanced_accuracy = (tpr + tnr) / 2.0;
  return m;
}

RocResult roc(std::span<const Label> actual, std::span<const double> scores) {
  if (actual.size() != scores.size())
    throw Error::validation("roc: label and score vectors differ in length");
  std::size_t n_pos = 0, n_neg = 0;
  for (Label l : actual) (l == Label::positive ? n_pos : n_neg)++;
  if (n_pos == 0 || n_neg == 0)
    throw Error::validation("roc needs both classes present");

  std::vector<std::size_t> order(actual.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocResult out;
  out.curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});

  // one curve point per distinct score (ties grouped); trapezoids accumulate
  // the area, which equals the Mann-Whitney statistic with ties counted half
  std::size_t tp = 0, fp = 0;
  double prev_fpr = 0.0, prev_tpr = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double threshold = scores[order[i]];
    while (i < order.size() && scores[order[i]] == threshold) {
      (actual[order[i]] == Label::positive ? tp : fp)++;
      ++i;
    }
    const double fpr = static_cast<double>(fp) / static_cast<double>(n_neg);
    const double tpr = static_cast<double>(tp) / static_cast<double>(n_pos);
    out.curve.points.push_back({fpr, tpr, threshold});
    out.auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
    prev_fpr = fpr;
    prev_tpr = tpr;
  }
  return out;
}

}  // namespace cfaug
