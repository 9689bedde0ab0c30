#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cfaug/dataset.hpp"

namespace cfaug {

enum class ClassifierKind { knn, logreg, rforest };

std::string classifier_kind_tag(ClassifierKind k);
ClassifierKind classifier_kind_from_tag(const std::string& tag);

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::knn;
  // knn
  std::size_t n_neighbors = 5;
  // logreg
  double c_reg = 1.0;          // inverse regularization strength, > 0
  std::size_t max_iter = 1000;
  // rforest
  std::size_t n_trees = 100;
  std::size_t max_depth = 10;

  std::uint64_t seed = 0;

  std::string describe() const;  // "knn(n_neighbors=5)" etc., seed excluded
  void validate() const;         // throws ErrorCode::validation
};

struct KnnModel {
  std::size_t k = 5;
  FeatureStats stats;              // training-split min/max for query scaling
  std::vector<double> scaled;      // row-major scaled training matrix
  std::vector<Label> labels;
  std::size_t n_features = 0;
};

struct LogRegModel {
  std::vector<double> weights;
  double bias = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

/// feature < 0 marks a leaf; then `leaf` is the tree's vote.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  Label leaf = Label::negative;
};

struct ForestModel {
  std::vector<std::vector<TreeNode>> trees;
  std::size_t n_features = 0;
};

/// Immutable after training; safe for concurrent scoring.
/// score() is a POSITIVE-class score in [0,1]; predict() thresholds at 0.5
/// with ties going to POSITIVE.
class TrainedModel {
public:
  TrainedModel() = default;
  explicit TrainedModel(KnnModel m) : impl_(std::move(m)) {}
  explicit TrainedModel(LogRegModel m) : impl_(std::move(m)) {}
  explicit TrainedModel(ForestModel m) : impl_(std::move(m)) {}

  ClassifierKind kind() const;
  double score(std::span<const double> x) const;
  Label predict(std::span<const double> x) const {
    return score(x) >= 0.5 ? Label::positive : Label::negative;
  }

  nlohmann::json to_json() const;  // versioned model document
  static TrainedModel from_json(const nlohmann::json& j);

  const KnnModel& knn() const { return std::get<KnnModel>(impl_); }
  const LogRegModel& logreg() const { return std::get<LogRegModel>(impl_); }
  const ForestModel& forest() const { return std::get<ForestModel>(impl_); }

private:
  std::variant<KnnModel, LogRegModel, ForestModel> impl_;
};

TrainedModel train(const ClassifierSpec& spec, const Dataset& ds);

/// L2-regularized mean logistic loss:
///   J(w, b) = mean_i ce(w.x_i + b, y_i) + ||w||^2 / (2 C n)
/// (bias unregularized). Exposed so gradient checks can difference the exact
/// training objective.
double logreg_loss(std::span<const double> weights, double bias,
                   const Dataset& ds, double c_reg);
void logreg_gradient(std::span<const double> weights, double bias,
                     const Dataset& ds, double c_reg,
                     std::span<double> grad_weights, double& grad_bias);

struct GridSearchReport {
  std::vector<ClassifierSpec> configs;
  std::vector<double> mean_scores;   // mean CV metric; NaN for failed configs
  std::vector<std::string> errors;   // per config, "" when it evaluated cleanly
  std::size_t best_index = 0;
  std::string metric = "roc_auc";
  std::size_t k_folds = 0;
};

/// Exhaustive search by stratified k-fold CV on `ds` only. Best = highest mean
/// metric; ties go to the earliest grid entry. A grid of one skips the CV.
GridSearchReport grid_search(std::span<const ClassifierSpec> grid, const Dataset& ds,
                             std::size_t k_folds, std::uint64_t seed);

}  // namespace cfaug
