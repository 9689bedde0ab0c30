#include "cfaug/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cfaug/cf_engine.hpp"
#include "cfaug/error.hpp"
#include "cfaug/evaluation.hpp"
#include "cfaug/random.hpp"

namespace cfaug {

std::string classifier_kind_tag(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::knn: return "knn";
    case ClassifierKind::logreg: return "logreg";
    case ClassifierKind::rforest: return "rforest";
  }
  throw Error::validation("unknown classifier kind");
}

ClassifierKind classifier_kind_from_tag(const std::string& tag) {
  if (tag == "knn") return ClassifierKind::knn;
  if (tag == "logreg") return ClassifierKind::logreg;
  if (tag == "rforest") return ClassifierKind::rforest;
  throw Error::validation("unknown classifier kind: '" + tag + "'");
}

std::string ClassifierSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ClassifierKind::knn:
      os << "knn(n_neighbors=" << n_neighbors << ")";
      break;
    case ClassifierKind::logreg:
      os << "logreg(C=" << c_reg << ",max_iter=" << max_iter << ")";
      break;
    case ClassifierKind::rforest:
      os << "rforest(n_trees=" << n_trees << ",max_depth=" << max_depth << ")";
      break;
  }
  return os.str();
}

void ClassifierSpec::validate() const {
  switch (kind) {
    case ClassifierKind::knn:
      if (n_neighbors < 1) throw Error::validation("knn: n_neighbors must be >= 1");
      break;
    case ClassifierKind::logreg:
      if (max_iter < 1) throw Error::validation("logreg: max_iter must be >= 1");
      if (!(c_reg > 0.0)) throw Error::validation("logreg: C must be > 0");
      break;
    case ClassifierKind::rforest:
      if (n_trees < 1) throw Error::validation("rforest: n_trees must be >= 1");
      if (max_depth < 1) throw Error::validation("rforest: max_depth must be >= 1");
      break;
  }
}

ClassifierKind TrainedModel::kind() const {
  if (std::holds_alternative<KnnModel>(impl_)) return ClassifierKind::knn;
  if (std::holds_alternative<LogRegModel>(impl_)) return ClassifierKind::logreg;
  return ClassifierKind::rforest;
}

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double knn_score(const KnnModel& m, std::span<const double> x) {
  if (x.size() != m.n_features)
    throw Error::validation("score: dimension mismatch");
  std::vector<double> q(m.n_features);
  min_max_scale_row(x, m.stats, q);

  const std::size_t n = m.labels.size();
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    dist.emplace_back(euclidean(q, {m.scaled.data() + i * m.n_features, m.n_features}), i);
  const std::size_t take = std::min(m.k, n);
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(take), dist.end());

  std::size_t positive = 0;
  for (std::size_t i = 0; i < take; ++i)
    if (m.labels[dist[i].second] == Label::positive) ++positive;
  return static_cast<double>(positive) / static_cast<double>(take);
}

double logreg_raw(const LogRegModel& m, std::span<const double> x) {
  if (x.size() != m.weights.size())
    throw Error::validation("score: dimension mismatch");
  double z = m.bias;
  for (std::size_t j = 0; j < x.size(); ++j) z += m.weights[j] * x[j];
  return z;
}

double forest_score(const ForestModel& m, std::span<const double> x) {
  if (x.size() != m.n_features)
    throw Error::validation("score: dimension mismatch");
  std::size_t positive = 0;
  for (const auto& tree : m.trees) {
    int node = 0;
    while (tree[static_cast<std::size_t>(node)].feature >= 0) {
      const auto& n = tree[static_cast<std::size_t>(node)];
      node = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    if (tree[static_cast<std::size_t>(node)].leaf == Label::positive) ++positive;
  }
  return static_cast<double>(positive) / static_cast<double>(m.trees.size());
}

}  // namespace

double TrainedModel::score(std::span<const double> x) const {
  if (const auto* m = std::get_if<KnnModel>(&impl_)) return knn_score(*m, x);
  if (const auto* m = std::get_if<LogRegModel>(&impl_)) return sigmoid(logreg_raw(*m, x));
  return forest_score(std::get<ForestModel>(impl_), x);
}

double logreg_loss(std::span<const double> weights, double bias, const Dataset& ds,
                   double c_reg) {
  const std::size_t n = ds.n_instances();
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto x = ds.row(i);
    double z = bias;
    for (std::size_t j = 0; j < x.size(); ++j) z += weights[j] * x[j];
    const double y = ds.label(i) == Label::positive ? 1.0 : 0.0;
    // stable cross-entropy: max(z,0) - z*y + log(1 + exp(-|z|))
    loss += std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
  }
  loss /= static_cast<double>(n);
  double reg = 0.0;
  for (double w : weights) reg += w * w;
  return loss + reg / (2.0 * c_reg * static_cast<double>(n));
}

void logreg_gradient(std::span<const double> weights, double bias, const Dataset& ds,
                     double c_reg, std::span<double> grad_weights, double& grad_bias) {
  const std::size_t n = ds.n_instances();
  std::fill(grad_weights.begin(), grad_weights.end(), 0.0);
  grad_bias = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto x = ds.row(i);
    double z = bias;
    for (std::size_t j = 0; j < x.size(); ++j) z += weights[j] * x[j];
    const double y = ds.label(i) == Label::positive ? 1.0 : 0.0;
    const double err = sigmoid(z) - y;
    for (std::size_t j = 0; j < x.size(); ++j) grad_weights[j] += err * x[j];
    grad_bias += err;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < weights.size(); ++j)
    grad_weights[j] = grad_weights[j] * inv_n + weights[j] / (c_reg * static_cast<double>(n));
  grad_bias *= inv_n;
}

namespace {

KnnModel train_knn(const ClassifierSpec& spec, const Dataset& ds) {
  KnnModel m;
  m.k = spec.n_neighbors;
  m.n_features = ds.n_features();
  m.stats = feature_stats(ds);
  const Dataset scaled = min_max_scale(ds, m.stats);
  m.scaled = scaled.raw_values();
  m.labels.reserve(ds.n_instances());
  for (std::size_t i = 0; i < ds.n_instances(); ++i) m.labels.push_back(ds.label(i));
  return m;
}

LogRegModel train_logreg(const ClassifierSpec& spec, const Dataset& ds) {
  LogRegModel m;
  m.weights.assign(ds.n_features(), 0.0);
  m.bias = 0.0;

  double loss = logreg_loss(m.weights, m.bias, ds, spec.c_reg);
  std::vector<double> grad(ds.n_features());
  std::vector<double> next_w(ds.n_features());
  double step = 1.0;

  for (std::size_t iter = 0; iter < spec.max_iter; ++iter) {
    m.iterations = iter + 1;
    double grad_b = 0.0;
    logreg_gradient(m.weights, m.bias, ds, spec.c_reg, grad, grad_b);

    double gmax = std::abs(grad_b);
    for (double g : grad) gmax = std::max(gmax, std::abs(g));
    if (gmax < 1e-10) {
      m.converged = true;
      break;
    }

    // fixed step halved whenever the proposed update raises the loss
    double next_b = 0.0;
    double next_loss = std::numeric_limits<double>::infinity();
    while (true) {
      for (std::size_t j = 0; j < grad.size(); ++j) next_w[j] = m.weights[j] - step * grad[j];
      next_b = m.bias - step * grad_b;
      next_loss = logreg_loss(next_w, next_b, ds, spec.c_reg);
      if (next_loss <= loss || step < 1e-18) break;
      step *= 0.5;
    }
    if (next_loss > loss) break;  // no representable step makes progress

    m.weights.swap(next_w);
    m.bias = next_b;
    if (loss - next_loss < 1e-12 * std::max(1.0, std::abs(loss))) {
      loss = next_loss;
      m.converged = true;
      break;
    }
    loss = next_loss;
    step = std::min(step * 2.0, 1e6);
  }
  return m;
}

}  // namespace

// in forest.cpp
ForestModel train_forest(const ClassifierSpec& spec, const Dataset& ds);

TrainedModel train(const ClassifierSpec& spec, const Dataset& ds) {
  spec.validate();
  if (!ds.is_binary()) throw Error::validation("train needs a binarized dataset");
  if (ds.n_positive() == 0 || ds.n_negative() == 0)
    throw Error::validation("training data contains a single class");

  switch (spec.kind) {
    case ClassifierKind::knn: return TrainedModel(train_knn(spec, ds));
    case ClassifierKind::logreg: return TrainedModel(train_logreg(spec, ds));
    case ClassifierKind::rforest: return TrainedModel(train_forest(spec, ds));
  }
  throw Error::validation("unknown classifier kind");
}

// ---- model (de)serialization: reproducibility audit format, version 1 ----

nlohmann::json TrainedModel::to_json() const {
  nlohmann::json j;
  j["format_version"] = 1;
  j["kind"] = classifier_kind_tag(kind());
  if (const auto* m = std::get_if<KnnModel>(&impl_)) {
    j["k"] = m->k;
    j["n_features"] = m->n_features;
    j["stats"] = {{"mean", m->stats.mean},
                  {"stddev", m->stats.stddev},
                  {"min", m->stats.min},
                  {"max", m->stats.max}};
    j["scaled"] = m->scaled;
    std::vector<int> labels;
    labels.reserve(m->labels.size());
    for (Label l : m->labels) labels.push_back(l == Label::positive ? 1 : 0);
    j["labels"] = labels;
  } else if (const auto* m = std::get_if<LogRegModel>(&impl_)) {
    j["weights"] = m->weights;
    j["bias"] = m->bias;
    j["converged"] = m->converged;
    j["iterations"] = m->iterations;
  } else {
    const auto& f = std::get<ForestModel>(impl_);
    j["n_features"] = f.n_features;
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& tree : f.trees) {
      nlohmann::json nodes = nlohmann::json::array();
      for (const auto& n : tree)
        nodes.push_back({n.feature, n.threshold, n.left, n.right,
                         n.leaf == Label::positive ? 1 : 0});
      trees.push_back(std::move(nodes));
    }
    j["trees"] = std::move(trees);
  }
  return j;
}

TrainedModel TrainedModel::from_json(const nlohmann::json& j) {
  if (j.at("format_version").get<int>() != 1)
    throw Error::validation("unsupported model format version");
  const auto kind = classifier_kind_from_tag(j.at("kind").get<std::string>());
  if (kind == ClassifierKind::knn) {
    KnnModel m;
    m.k = j.at("k").get<std::size_t>();
    m.n_features = j.at("n_features").get<std::size_t>();
    const auto& s = j.at("stats");
    m.stats.mean = s.at("mean").get<std::vector<double>>();
    m.stats.stddev = s.at("stddev").get<std::vector<double>>();
    m.stats.min = s.at("min").get<std::vector<double>>();
    m.stats.max = s.at("max").get<std::vector<double>>();
    m.scaled = j.at("scaled").get<std::vector<double>>();
    for (int l : j.at("labels").get<std::vector<int>>())
      m.labels.push_back(l == 1 ? Label::positive : Label::negative);
    return TrainedModel(std::move(m));
  }
  if (kind == ClassifierKind::logreg) {
    LogRegModel m;
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.converged = j.at("converged").get<bool>();
    m.iterations = j.at("iterations").get<std::size_t>();
    return TrainedModel(std::move(m));
  }
  ForestModel f;
  f.n_features = j.at("n_features").get<std::size_t>();
  for (const auto& tree : j.at("trees")) {
    std::vector<TreeNode> nodes;
    for (const auto& n : tree) {
      TreeNode node;
      node.feature = n.at(0).get<int>();
      node.threshold = n.at(1).get<double>();
      node.left = n.at(2).get<int>();
      node.right = n.at(3).get<int>();
      node.leaf = n.at(4).get<int>() == 1 ? Label::positive : Label::negative;
      nodes.push_back(node);
    }
    f.trees.push_back(std::move(nodes));
  }
  return TrainedModel(std::move(f));
}

GridSearchReport grid_search(std::span<const ClassifierSpec> grid, const Dataset& ds,
                             std::size_t k_folds, std::uint64_t seed) {
  if (grid.empty()) throw Error::validation("grid_search needs a non-empty grid");

  GridSearchReport report;
  report.configs.assign(grid.begin(), grid.end());
  report.mean_scores.assign(grid.size(), std::numeric_limits<double>::quiet_NaN());
  report.errors.assign(grid.size(), "");
  report.k_folds = k_folds;

  const FoldAssignment folds = stratified_kfold(ds, k_folds, derive_seed(seed, "grid-folds"));

  for (std::size_t c = 0; c < grid.size(); ++c) {
    double total = 0.0;
    try {
      for (std::size_t f = 0; f < k_folds; ++f) {
        ClassifierSpec spec = grid[c];
        spec.seed = derive_seed(seed, "grid|" + spec.describe() + "|fold=" + std::to_string(f));
        const Dataset train_ds = ds.subset(folds.train_rows(f));
        const TrainedModel model = train(spec, train_ds);

        const auto test = folds.test_rows(f);
        std::vector<Label> actual;
        std::vector<double> scores;
        actual.reserve(test.size());
        scores.reserve(test.size());
        for (std::size_t r : test) {
          actual.push_back(ds.label(r));
          scores.push_back(model.score(ds.row(r)));
        }
        total += roc(actual, scores).auc;
      }
      report.mean_scores[c] = total / static_cast<double>(k_folds);
    } catch (const Error& e) {
      report.errors[c] = grid[c].describe() + ": " + e.what();
    }
  }

  bool any_ok = false;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < grid.size(); ++c) {
    if (!report.errors[c].empty()) continue;
    if (!any_ok || report.mean_scores[c] > best) {  // ties keep the earliest entry
      best = report.mean_scores[c];
      report.best_index = c;
      any_ok = true;
    }
  }
  if (!any_ok)
    throw Error::algorithm("grid_search: every configuration failed; first error: " +
                           report.errors[0]);
  return report;
}

}  // namespace cfaug
