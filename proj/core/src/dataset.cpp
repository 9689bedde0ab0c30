#include "cfaug/dataset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "cfaug/error.hpp"
#include "cfaug/random.hpp"

namespace cfaug {

Dataset::Dataset(std::size_t n_features,
                 std::vector<std::string> feature_names,
                 std::vector<std::string> class_names,
                 std::string label_column_name)
    : n_features_(n_features),
      feature_names_(std::move(feature_names)),
      class_names_(std::move(class_names)),
      label_column_name_(std::move(label_column_name)) {
  if (n_features_ == 0) throw Error::validation("dataset needs at least one feature");
  if (feature_names_.size() != n_features_)
    throw Error::validation("feature name count does not match feature count");
}

Label Dataset::label(std::size_t i) const {
  return labels_[i] == 1 ? Label::positive : Label::negative;
}

std::size_t Dataset::count_of(int class_id) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), class_id));
}

std::size_t Dataset::n_positive() const { return count_of(1); }
std::size_t Dataset::n_negative() const { return count_of(0); }

std::vector<std::size_t> Dataset::rows_with(Label l) const {
  std::vector<std::size_t> rows;
  const int want = l == Label::positive ? 1 : 0;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == want) rows.push_back(i);
  return rows;
}

void Dataset::append_row(std::span<const double> values, int class_id) {
  if (values.size() != n_features_)
    throw Error::validation("row width does not match dataset feature count");
  if (class_id < 0 || static_cast<std::size_t>(class_id) >= class_names_.size())
    throw Error::validation("class id out of range");
  values_.insert(values_.end(), values.begin(), values.end());
  labels_.push_back(class_id);
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Dataset out(n_features_, feature_names_, class_names_, label_column_name_);
  out.binary_ = binary_;
  out.values_.reserve(rows.size() * n_features_);
  out.labels_.reserve(rows.size());
  for (std::size_t r : rows) out.append_row(row(r), labels_[r]);
  return out;
}

std::vector<std::size_t> FoldAssignment::test_rows(std::size_t f) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold.size(); ++i)
    if (fold[i] == f) rows.push_back(i);
  return rows;
}

std::vector<std::size_t> FoldAssignment::train_rows(std::size_t f) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold.size(); ++i)
    if (fold[i] != f) rows.push_back(i);
  return rows;
}

namespace {

int find_class(const Dataset& ds, const std::string& name) {
  const auto& names = ds.class_names();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end())
    throw Error::validation("unknown class name: '" + name + "'");
  return static_cast<int>(it - names.begin());
}

Dataset make_binary(const Dataset& ds, int pos_id, const std::vector<std::size_t>& keep_rows,
                    const std::string& pos_name, const std::string& neg_name) {
  Dataset out(ds.n_features(), ds.feature_names(),
              {neg_name, pos_name}, ds.label_column_name());
  for (std::size_t r : keep_rows)
    out.append_row(ds.row(r), ds.class_id(r) == pos_id ? 1 : 0);
  const std::size_t pos = out.count_of(1), neg = out.count_of(0);
  if (pos == 0 || neg == 0)
    throw Error::validation("binarization produced an empty class");
  if (pos > neg)
    throw Error::validation("positive class '" + pos_name + "' is larger than the negative class (" +
                            std::to_string(pos) + " > " + std::to_string(neg) +
                            "); choose the minority class as positive");
  out.mark_binary();
  return out;
}

}  // namespace

Dataset binarize(const Dataset& ds, const BinarizeSpec& spec) {
  if (ds.n_instances() == 0) throw Error::validation("cannot binarize an empty dataset");
  std::vector<std::size_t> all_rows(ds.n_instances());
  std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});

  switch (spec.mode) {
    case BinarizeSpec::Mode::one_vs_rest: {
      const int pos = find_class(ds, spec.positive);
      return make_binary(ds, pos, all_rows, spec.positive, "rest");
    }
    case BinarizeSpec::Mode::one_vs_one: {
      const int pos = find_class(ds, spec.positive);
      const int neg = find_class(ds, spec.negative);
      if (pos == neg) throw Error::validation("one-vs-one needs two distinct classes");
      std::vector<std::size_t> keep;
      for (std::size_t r : all_rows)
        if (ds.class_id(r) == pos || ds.class_id(r) == neg) keep.push_back(r);
      return make_binary(ds, pos, keep, spec.positive, spec.negative);
    }
    case BinarizeSpec::Mode::automatic: {
      std::unordered_map<int, std::size_t> counts;
      for (std::size_t r : all_rows) counts[ds.class_id(r)]++;
      if (counts.size() != 2)
        throw Error::validation("automatic binarization needs exactly two classes, found " +
                                std::to_string(counts.size()) +
                                "; name a positive class explicitly");
      auto it = counts.begin();
      int a = it->first; ++it;
      int b = it->first;
      // minority becomes positive; equal counts break by class name
      int pos;
      if (counts[a] != counts[b]) {
        pos = counts[a] < counts[b] ? a : b;
      } else {
        pos = ds.class_names()[static_cast<std::size_t>(a)] < ds.class_names()[static_cast<std::size_t>(b)] ? a : b;
      }
      const int neg = pos == a ? b : a;
      return make_binary(ds, pos, all_rows, ds.class_names()[static_cast<std::size_t>(pos)],
                         ds.class_names()[static_cast<std::size_t>(neg)]);
    }
  }
  throw Error::validation("unhandled binarize mode");
}

FeatureStats feature_stats(const Dataset& ds) {
  const std::size_t n = ds.n_instances();
  const std::size_t f = ds.n_features();
  if (n == 0) throw Error::validation("feature_stats needs at least one instance");

  FeatureStats s;
  s.mean.assign(f, 0.0);
  s.stddev.assign(f, 0.0);
  s.min.assign(f, std::numeric_limits<double>::infinity());
  s.max.assign(f, -std::numeric_limits<double>::infinity());

  for (std::size_t i = 0; i < n; ++i) {
    auto row = ds.row(i);
    for (std::size_t j = 0; j < f; ++j) {
      s.mean[j] += row[j];
      s.min[j] = std::min(s.min[j], row[j]);
      s.max[j] = std::max(s.max[j], row[j]);
    }
  }
  for (std::size_t j = 0; j < f; ++j) s.mean[j] /= static_cast<double>(n);

  // population variance, divisor n
  for (std::size_t i = 0; i < n; ++i) {
    auto row = ds.row(i);
    for (std::size_t j = 0; j < f; ++j) {
      const double d = row[j] - s.mean[j];
      s.stddev[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < f; ++j)
    s.stddev[j] = std::sqrt(s.stddev[j] / static_cast<double>(n));
  return s;
}

DatasetSummary summarize(const Dataset& ds) {
  if (!ds.is_binary()) throw Error::validation("summarize needs a binarized dataset");
  DatasetSummary out;
  out.n_features = ds.n_features();
  out.n_instances = ds.n_instances();
  out.n_minority = ds.n_positive();
  out.n_majority = ds.n_negative();
  if (out.n_minority == 0) throw Error::validation("dataset has no minority instances");
  out.imbalance_ratio = static_cast<double>(out.n_majority) / static_cast<double>(out.n_minority);
  return out;
}

FoldAssignment stratified_kfold(const Dataset& ds, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw Error::validation("stratified_kfold needs k >= 2");
  const std::size_t n = ds.n_instances();

  std::unordered_map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < n; ++i) by_class[ds.class_id(i)].push_back(i);

  std::vector<int> class_ids;
  for (auto& [id, rows] : by_class) class_ids.push_back(id);
  std::sort(class_ids.begin(), class_ids.end());

  for (int id : class_ids) {
    if (by_class[id].size() < k)
      throw Error::validation("class '" + ds.class_names()[static_cast<std::size_t>(id)] +
                              "' has " + std::to_string(by_class[id].size()) +
                              " instances, fewer than k=" + std::to_string(k));
  }

  FoldAssignment out;
  out.k = k;
  out.fold.assign(n, 0);
  Rng rng(splitmix64(seed));
  for (int id : class_ids) {
    auto& rows = by_class[id];  // already ascending
    std::shuffle(rows.begin(), rows.end(), rng);
    for (std::size_t i = 0; i < rows.size(); ++i) out.fold[rows[i]] = i % k;
  }
  return out;
}

Dataset min_max_scale(const Dataset& ds, const FeatureStats& stats) {
  if (stats.n_features() != ds.n_features())
    throw Error::validation("stats feature count does not match dataset");
  Dataset out(ds.n_features(), ds.feature_names(), ds.class_names(), ds.label_column_name());
  if (ds.is_binary()) out.mark_binary();
  std::vector<double> scaled(ds.n_features());
  for (std::size_t i = 0; i < ds.n_instances(); ++i) {
    min_max_scale_row(ds.row(i), stats, scaled);
    out.append_row(scaled, ds.class_id(i));
  }
  return out;
}

void min_max_scale_row(std::span<const double> in, const FeatureStats& stats,
                       std::span<double> out) {
  for (std::size_t j = 0; j < in.size(); ++j) {
    const double range = stats.max[j] - stats.min[j];
    out[j] = range == 0.0 ? 0.0 : (in[j] - stats.min[j]) / range;
  }
}

std::uint64_t dataset_fingerprint(const Dataset& ds) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) { h = splitmix64(h ^ v); };
  mix(ds.n_features());
  mix(ds.n_instances());
  for (double v : ds.raw_values()) mix(std::bit_cast<std::uint64_t>(v));
  for (int l : ds.raw_labels()) mix(static_cast<std::uint64_t>(l));
  for (const auto& s : ds.feature_names()) mix(fnv1a64(s));
  for (const auto& s : ds.class_names()) mix(fnv1a64(s));
  mix(ds.is_binary() ? 1 : 0);
  return h;
}

}  // namespace cfaug
