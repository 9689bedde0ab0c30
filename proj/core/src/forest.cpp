#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cfaug/classifiers.hpp"
#include "cfaug/error.hpp"
#include "cfaug/random.hpp"

namespace cfaug {

namespace {

// CART with Gini impurity, bootstrap rows, sqrt(n_features) candidates per split.

struct SplitChoice {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

double gini(std::size_t pos, std::size_t total) {
  if (total == 0) return 0.0;
  const double p = static_cast<double>(pos) / static_cast<double>(total);
  return 2.0 * p * (1.0 - p);
}

class TreeBuilder {
public:
  TreeBuilder(const Dataset& ds, std::size_t max_depth, std::size_t mtry, Rng& rng)
      : ds_(ds), max_depth_(max_depth), mtry_(mtry), rng_(rng) {}

  std::vector<TreeNode> build(std::vector<std::size_t> rows) {
    nodes_.clear();
    grow(std::move(rows), 0);
    return std::move(nodes_);
  }

private:
  int grow(std::vector<std::size_t> rows, std::size_t depth) {
    const std::size_t pos = count_positive(rows);
    const int index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();

    const bool pure = pos == 0 || pos == rows.size();
    if (depth >= max_depth_ || rows.size() < 2 || pure) {
      make_leaf(index, pos, rows.size());
      return index;
    }

    const SplitChoice split = best_split(rows);
    if (!split.found) {
      make_leaf(index, pos, rows.size());
      return index;
    }

    std::vector<std::size_t> left, right;
    for (std::size_t r : rows) {
      (ds_.value(r, split.feature) <= split.threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    nodes_[static_cast<std::size_t>(index)].feature = static_cast<int>(split.feature);
    nodes_[static_cast<std::size_t>(index)].threshold = split.threshold;
    const int l = grow(std::move(left), depth + 1);
    const int r = grow(std::move(right), depth + 1);
    nodes_[static_cast<std::size_t>(index)].left = l;
    nodes_[static_cast<std::size_t>(index)].right = r;
    return index;
  }

  void make_leaf(int index, std::size_t pos, std::size_t total) {
    auto& n = nodes_[static_cast<std::size_t>(index)];
    n.feature = -1;
    // tie votes go to the minority class
    n.leaf = 2 * pos >= total ? Label::positive : Label::negative;
  }

  std::size_t count_positive(const std::vector<std::size_t>& rows) const {
    std::size_t pos = 0;
    for (std::size_t r : rows)
      if (ds_.label(r) == Label::positive) ++pos;
    return pos;
  }

  SplitChoice best_split(const std::vector<std::size_t>& rows) {
    std::vector<std::size_t> features(ds_.n_features());
    std::iota(features.begin(), features.end(), std::size_t{0});
    std::vector<std::size_t> candidates;
    candidates.reserve(mtry_);
    std::sample(features.begin(), features.end(), std::back_inserter(candidates), mtry_, rng_);

    const std::size_t total = rows.size();
    const std::size_t total_pos = count_positive(rows);
    const double parent = gini(total_pos, total);

    SplitChoice best;
    std::vector<std::pair<double, bool>> column(rows.size());  // (value, is_positive)
    for (std::size_t f : candidates) {
      for (std::size_t i = 0; i < rows.size(); ++i)
        column[i] = {ds_.value(rows[i], f), ds_.label(rows[i]) == Label::positive};
      std::sort(column.begin(), column.end());

      std::size_t left_n = 0, left_pos = 0;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        ++left_n;
        if (column[i].second) ++left_pos;
        if (column[i].first == column[i + 1].first) continue;  // no cut between equal values

        const std::size_t right_n = total - left_n;
        const std::size_t right_pos = total_pos - left_pos;
        const double weighted =
            (static_cast<double>(left_n) * gini(left_pos, left_n) +
             static_cast<double>(right_n) * gini(right_pos, right_n)) /
            static_cast<double>(total);
        const double gain = parent - weighted;
        if (gain > best.gain + 1e-15) {
          best.found = true;
          best.gain = gain;
          best.feature = f;
          best.threshold = column[i].first + (column[i + 1].first - column[i].first) / 2.0;
        }
      }
    }
    return best;
  }

  const Dataset& ds_;
  std::size_t max_depth_;
  std::size_t mtry_;
  Rng& rng_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

ForestModel train_forest(const ClassifierSpec& spec, const Dataset& ds) {
  ForestModel model;
  model.n_features = ds.n_features();
  model.trees.reserve(spec.n_trees);

  const std::size_t n = ds.n_instances();
  const std::size_t mtry =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(
                                   static_cast<double>(ds.n_features())))));

  for (std::size_t t = 0; t < spec.n_trees; ++t) {
    Rng rng(derive_seed(spec.seed, "tree|" + std::to_string(t)));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> bootstrap(n);
    for (auto& r : bootstrap) r = pick(rng);

    TreeBuilder builder(ds, spec.max_depth, mtry, rng);
    model.trees.push_back(builder.build(std::move(bootstrap)));
  }
  return model;
}

}  // namespace cfaug
