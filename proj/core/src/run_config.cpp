#include "cfaug/run_config.hpp"

#include <filesystem>
#include <set>

#include <nlohmann/json.hpp>

#include "cfaug/error.hpp"
#include "cfaug/io_util.hpp"

namespace fs = std::filesystem;

namespace cfaug {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error::validation("config: " + where + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing required field '") + key + "'");
  return *it;
}

template <typename T>
T get_as(const json& j, const char* key, const std::string& where) {
  try {
    return require(j, key, where).get<T>();
  } catch (const json::exception&) {
    fail(where, std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    fail(where, std::string("field '") + key + "' has the wrong type");
  }
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok) fail(where, "unknown field '" + it.key() + "'");
  }
}

DatasetConfig parse_dataset(const json& j, std::size_t index) {
  const std::string where = "datasets[" + std::to_string(index) + "]";
  if (!j.is_object()) fail(where, "must be an object");
  reject_unknown_keys(j, {"name", "path", "label_column", "header", "separator", "binarize"}, where);

  DatasetConfig out;
  out.name = get_as<std::string>(j, "name", where);
  out.path = get_as<std::string>(j, "path", where);
  if (out.name.empty()) fail(where, "'name' must be non-empty");
  if (!fs::exists(out.path)) fail(where, "dataset file does not exist: " + out.path);

  if (j.contains("label_column"))
    out.csv.label_column = get_as<std::string>(j, "label_column", where);
  if (j.contains("separator")) {
    const auto sep = get_as<std::string>(j, "separator", where);
    if (sep.size() != 1) fail(where, "'separator' must be a single character");
    out.csv.separator = sep[0];
  }
  if (j.contains("header")) {
    const auto& h = j.at("header");
    if (h.is_boolean()) {
      out.csv.header = h.get<bool>() ? CsvOptions::Header::yes : CsvOptions::Header::no;
    } else if (h.is_string() && h.get<std::string>() == "auto") {
      out.csv.header = CsvOptions::Header::automatic;
    } else {
      fail(where, "'header' must be true, false or \"auto\"");
    }
  }

  const json& b = require(j, "binarize", where);
  const std::string bwhere = where + ".binarize";
  if (!b.is_object()) fail(bwhere, "must be an object");
  reject_unknown_keys(b, {"mode", "positive", "negative"}, bwhere);
  const auto mode = get_as<std::string>(b, "mode", bwhere);
  if (mode == "ovr") {
    out.binarize.mode = BinarizeSpec::Mode::one_vs_rest;
    out.binarize.positive = get_as<std::string>(b, "positive", bwhere);
  } else if (mode == "ovo") {
    out.binarize.mode = BinarizeSpec::Mode::one_vs_one;
    out.binarize.positive = get_as<std::string>(b, "positive", bwhere);
    out.binarize.negative = get_as<std::string>(b, "negative", bwhere);
  } else if (mode == "auto") {
    out.binarize.mode = BinarizeSpec::Mode::automatic;
  } else {
    fail(bwhere, "'mode' must be \"ovr\", \"ovo\" or \"auto\"");
  }
  return out;
}

ResamplePlan parse_method(const json& j, std::size_t index) {
  const std::string where = "methods[" + std::to_string(index) + "]";
  if (!j.is_object()) fail(where, "must be an object");
  reject_unknown_keys(j, {"method", "k_neighbors", "m_neighbors", "target", "tolerance",
                          "max_diffs", "verify"},
                      where);
  ResamplePlan plan;
  try {
    plan.method = method_from_tag(get_as<std::string>(j, "method", where));
  } catch (const Error& e) {
    fail(where, e.what());
  }
  plan.k_neighbors = get_or<std::size_t>(j, "k_neighbors", 5, where);
  plan.m_neighbors = get_or<std::size_t>(j, "m_neighbors", 0, where);
  if (j.contains("target"))
    plan.target_count = get_as<std::size_t>(j, "target", where);
  plan.tolerance_factor = get_or<double>(j, "tolerance", 0.1, where);
  plan.max_diffs = get_or<std::size_t>(j, "max_diffs", 2, where);
  plan.verify = get_or<bool>(j, "verify", false, where);
  if (plan.method != Method::baseline && plan.method != Method::cfa && plan.k_neighbors == 0)
    fail(where, "'k_neighbors' must be >= 1");
  if (plan.method == Method::cfa && plan.max_diffs == 0)
    fail(where, "'max_diffs' must be >= 1");
  if (plan.tolerance_factor < 0.0) fail(where, "'tolerance' must be >= 0");
  return plan;
}

std::vector<double> number_list(const json& j, const char* key, const std::string& where) {
  const auto& v = require(j, key, where);
  if (!v.is_array() || v.empty()) fail(where, std::string("'") + key + "' must be a non-empty array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) fail(where, std::string("'") + key + "' must contain numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

ClassifierGridConfig parse_classifier(const json& j, std::size_t index) {
  const std::string where = "classifiers[" + std::to_string(index) + "]";
  if (!j.is_object()) fail(where, "must be an object");
  reject_unknown_keys(j, {"name", "grid"}, where);
  ClassifierGridConfig out;
  out.name = get_as<std::string>(j, "name", where);

  ClassifierKind kind;
  try {
    kind = classifier_kind_from_tag(out.name);
  } catch (const Error& e) {
    fail(where, e.what());
  }
  const json& grid = require(j, "grid", where);
  const std::string gwhere = where + ".grid";
  if (!grid.is_object()) fail(gwhere, "must be an object of parameter -> value list");

  // cartesian product over each parameter's value list
  switch (kind) {
    case ClassifierKind::knn: {
      reject_unknown_keys(grid, {"n_neighbors"}, gwhere);
      for (double k : number_list(grid, "n_neighbors", gwhere)) {
        ClassifierSpec s;
        s.kind = kind;
        s.n_neighbors = static_cast<std::size_t>(k);
        out.grid.push_back(s);
      }
      break;
    }
    case ClassifierKind::logreg: {
      reject_unknown_keys(grid, {"C", "max_iter"}, gwhere);
      const auto cs = number_list(grid, "C", gwhere);
      const auto iters = grid.contains("max_iter")
                             ? number_list(grid, "max_iter", gwhere)
                             : std::vector<double>{1000.0};
      for (double c : cs) {
        for (double it : iters) {
          ClassifierSpec s;
          s.kind = kind;
          s.c_reg = c;
          s.max_iter = static_cast<std::size_t>(it);
          out.grid.push_back(s);
        }
      }
      break;
    }
    case ClassifierKind::rforest: {
      reject_unknown_keys(grid, {"n_trees", "max_depth"}, gwhere);
      const auto trees = number_list(grid, "n_trees", gwhere);
      const auto depths = grid.contains("max_depth")
                              ? number_list(grid, "max_depth", gwhere)
                              : std::vector<double>{10.0};
      for (double t : trees) {
        for (double d : depths) {
          ClassifierSpec s;
          s.kind = kind;
          s.n_trees = static_cast<std::size_t>(t);
          s.max_depth = static_cast<std::size_t>(d);
          out.grid.push_back(s);
        }
      }
      break;
    }
  }
  for (const auto& s : out.grid) {
    try {
      s.validate();
    } catch (const Error& e) {
      fail(gwhere, e.what());
    }
  }
  return out;
}

}  // namespace

RunConfig parse_run_config(const json& doc) {
  if (!doc.is_object()) fail("document", "must be a JSON object");
  reject_unknown_keys(doc, {"seed", "k_folds", "inner_folds", "output_dir",
                            "datasets", "methods", "classifiers"},
                      "document");

  RunConfig config;
  // mandatory: reruns must be reproducible, so there is no wall-clock default
  config.seed = get_as<std::uint64_t>(doc, "seed", "document");
  config.k_folds = get_or<std::size_t>(doc, "k_folds", 5, "document");
  config.inner_folds = get_or<std::size_t>(doc, "inner_folds", 3, "document");
  config.output_dir = get_or<std::string>(doc, "output_dir", "out", "document");
  if (config.k_folds < 2) fail("document", "'k_folds' must be >= 2");
  if (config.inner_folds < 2) fail("document", "'inner_folds' must be >= 2");

  const json& datasets = require(doc, "datasets", "document");
  if (!datasets.is_array() || datasets.empty())
    fail("document", "'datasets' must be a non-empty array");
  std::set<std::string> dataset_names;
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    config.datasets.push_back(parse_dataset(datasets[i], i));
    if (!dataset_names.insert(config.datasets.back().name).second)
      fail("datasets", "duplicate dataset name '" + config.datasets.back().name + "'");
  }

  const json& methods = require(doc, "methods", "document");
  if (!methods.is_array() || methods.empty())
    fail("document", "'methods' must be a non-empty array");
  std::set<std::string> method_tags;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    config.methods.push_back(parse_method(methods[i], i));
    if (!method_tags.insert(method_tag(config.methods.back().method)).second)
      fail("methods", "duplicate method '" + method_tag(config.methods.back().method) + "'");
  }

  const json& classifiers = require(doc, "classifiers", "document");
  if (!classifiers.is_array() || classifiers.empty())
    fail("document", "'classifiers' must be a non-empty array");
  std::set<std::string> classifier_names;
  for (std::size_t i = 0; i < classifiers.size(); ++i) {
    config.classifiers.push_back(parse_classifier(classifiers[i], i));
    if (!classifier_names.insert(config.classifiers.back().name).second)
      fail("classifiers", "duplicate classifier '" + config.classifiers.back().name + "'");
  }
  return config;
}

RunConfig load_run_config(const std::string& path) {
  if (!fs::exists(path)) throw Error::validation("config file does not exist: " + path);
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error::validation("config: invalid JSON: " + std::string(e.what()));
  }
  return parse_run_config(doc);
}

std::vector<NamedDataset> load_datasets(const RunConfig& config) {
  std::vector<NamedDataset> out;
  out.reserve(config.datasets.size());
  for (const auto& d : config.datasets) {
    Dataset raw = load_csv(d.path, d.csv);
    out.push_back({d.name, binarize(raw, d.binarize)});
  }
  return out;
}

}  // namespace cfaug
