#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cfaug {

/// Binary class tag after binarization. POSITIVE is always the minority class.
enum class Label : std::uint8_t { negative = 0, positive = 1 };

/// Dense row-major feature matrix with one class tag per row.
///
/// Raw (as-loaded) datasets carry arbitrary class vocabularies; binarize()
/// produces a dataset whose class ids are exactly {0 = NEGATIVE, 1 = POSITIVE}
/// and whose positive class is the minority. Immutable in normal use: all
/// operations return new datasets.
class Dataset {
public:
  Dataset() = default;
  Dataset(std::size_t n_features,
          std::vector<std::string> feature_names,
          std::vector<std::string> class_names,
          std::string label_column_name = "class");

  std::size_t n_instances() const { return n_features_ == 0 ? 0 : values_.size() / n_features_; }
  std::size_t n_features() const { return n_features_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * n_features_, n_features_};
  }
  double value(std::size_t i, std::size_t f) const { return values_[i * n_features_ + f]; }

  int class_id(std::size_t i) const { return labels_[i]; }
  const std::string& class_name_of(std::size_t i) const { return class_names_[static_cast<std::size_t>(labels_[i])]; }

  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::vector<std::string>& class_names() const { return class_names_; }
  const std::string& label_column_name() const { return label_column_name_; }

  /// True once the dataset uses the {NEGATIVE, POSITIVE} convention.
  bool is_binary() const { return binary_; }
  Label label(std::size_t i) const;  // requires is_binary()

  std::size_t count_of(int class_id) const;
  std::size_t n_positive() const;
  std::size_t n_negative() const;
  /// Row indices carrying the given label, ascending. Requires is_binary().
  std::vector<std::size_t> rows_with(Label l) const;

  void append_row(std::span<const double> values, int class_id);
  /// New dataset holding the given rows, in the given order.
  Dataset subset(std::span<const std::size_t> rows) const;

  const std::vector<double>& raw_values() const { return values_; }
  const std::vector<int>& raw_labels() const { return labels_; }

  void mark_binary() { binary_ = true; }

private:
  std::size_t n_features_ = 0;
  std::vector<double> values_;  // row-major
  std::vector<int> labels_;     // index into class_names_
  std::vector<std::string> feature_names_;
  std::vector<std::string> class_names_;
  std::string label_column_name_ = "class";
  bool binary_ = false;
};

/// Per-feature population statistics (divisor n, not n-1).
struct FeatureStats {
  std::vector<double> mean;
  std::vector<double> stddev;
  std::vector<double> min;
  std::vector<double> max;

  std::size_t n_features() const { return mean.size(); }
};

struct DatasetSummary {
  std::size_t n_features = 0;
  std::size_t n_instances = 0;
  std::size_t n_minority = 0;
  std::size_t n_majority = 0;
  double imbalance_ratio = 0.0;  // n_majority / n_minority
};

/// Stratified fold assignment: fold[i] in [0, k) for every instance.
struct FoldAssignment {
  std::size_t k = 0;
  std::vector<std::size_t> fold;

  std::vector<std::size_t> test_rows(std::size_t f) const;
  std::vector<std::size_t> train_rows(std::size_t f) const;
};

struct BinarizeSpec {
  enum class Mode { one_vs_rest, one_vs_one, automatic };
  Mode mode = Mode::automatic;
  std::string positive;  // required for one_vs_rest / one_vs_one
  std::string negative;  // required for one_vs_one
};

struct CsvOptions {
  /// Label column by name (needs a header). Unset: label_index or last column.
  std::optional<std::string> label_column;
  std::optional<std::size_t> label_index;
  enum class Header { automatic, yes, no };
  /// automatic: the first row is a header iff none of its cells parse as a number.
  Header header = Header::automatic;
  char separator = ',';
  /// Header names dropped at load; the default makes augmented CSVs (which
  /// carry a trailing provenance column) directly re-loadable.
  std::vector<std::string> ignore_columns{"provenance"};
};

Dataset load_csv(const std::string& path, const CsvOptions& options = {});

/// Writes features with shortest round-trip formatting (reload is bit-exact).
/// A non-empty `provenance` (one string per row, "" = none) adds a trailing
/// `provenance` column.
void write_csv(const Dataset& ds, const std::string& path,
               std::span<const std::string> provenance = {});

/// One-vs-rest keeps all rows; one-vs-one keeps only the two named classes.
/// The positive class must come out as the minority (count <= negative count).
/// automatic: dataset must already have exactly two classes; the minority
/// becomes POSITIVE.
Dataset binarize(const Dataset& ds, const BinarizeSpec& spec);

FeatureStats feature_stats(const Dataset& ds);

DatasetSummary summarize(const Dataset& ds);  // requires binarized dataset

/// Deterministic stratified k-fold: per class, rows are shuffled by `seed` and
/// dealt round-robin, so per-class fold sizes differ by at most one.
FoldAssignment stratified_kfold(const Dataset& ds, std::size_t k, std::uint64_t seed);

/// (v - min) / (max - min) per feature; constant features map to 0.
/// Values outside the stats' range are not clipped.
Dataset min_max_scale(const Dataset& ds, const FeatureStats& stats);
void min_max_scale_row(std::span<const double> in, const FeatureStats& stats,
                       std::span<double> out);

/// Content hash over features, labels and names; used for cache keys.
std::uint64_t dataset_fingerprint(const Dataset& ds);

}  // namespace cfaug
