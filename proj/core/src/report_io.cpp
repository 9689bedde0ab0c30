#include "cfaug/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cfaug/error.hpp"

namespace cfaug {

namespace {

using nlohmann::json;

json metricset_to_json(const MetricSet& m) {
  return {{"recall", m.recall},
          {"precision", m.precision},
          {"f1", m.f1},
          {"balanced_accuracy", m.balanced_accuracy},
          {"roc_auc", m.roc_auc},
          {"recall_degenerate", m.recall_degenerate},
          {"precision_degenerate", m.precision_degenerate}};
}

MetricSet metricset_from_json(const json& j) {
  MetricSet m;
  m.recall = j.at("recall").get<double>();
  m.precision = j.at("precision").get<double>();
  m.f1 = j.at("f1").get<double>();
  m.balanced_accuracy = j.at("balanced_accuracy").get<double>();
  m.roc_auc = j.at("roc_auc").get<double>();
  m.recall_degenerate = j.at("recall_degenerate").get<bool>();
  m.precision_degenerate = j.at("precision_degenerate").get<bool>();
  return m;
}

json spec_to_json(const ClassifierSpec& s) {
  json j;
  j["kind"] = classifier_kind_tag(s.kind);
  j["seed"] = s.seed;
  switch (s.kind) {
    case ClassifierKind::knn:
      j["n_neighbors"] = s.n_neighbors;
      break;
    case ClassifierKind::logreg:
      j["C"] = s.c_reg;
      j["max_iter"] = s.max_iter;
      break;
    case ClassifierKind::rforest:
      j["n_trees"] = s.n_trees;
      j["max_depth"] = s.max_depth;
      break;
  }
  return j;
}

ClassifierSpec spec_from_json(const json& j) {
  ClassifierSpec s;
  s.kind = classifier_kind_from_tag(j.at("kind").get<std::string>());
  s.seed = j.at("seed").get<std::uint64_t>();
  switch (s.kind) {
    case ClassifierKind::knn:
      s.n_neighbors = j.at("n_neighbors").get<std::size_t>();
      break;
    case ClassifierKind::logreg:
      s.c_reg = j.at("C").get<double>();
      s.max_iter = j.at("max_iter").get<std::size_t>();
      break;
    case ClassifierKind::rforest:
      s.n_trees = j.at("n_trees").get<std::size_t>();
      s.max_depth = j.at("max_depth").get<std::size_t>();
      break;
  }
  return s;
}

json roc_to_json(const RocCurve& curve) {
  json points = json::array();
  for (const auto& p : curve.points) {
    // the origin point carries threshold = +inf, which JSON cannot hold
    json thr;
    if (std::isfinite(p.threshold)) thr = p.threshold;
    points.push_back({p.fpr, p.tpr, thr});
  }
  return points;
}

RocCurve roc_from_json(const json& j) {
  RocCurve curve;
  for (const auto& p : j) {
    RocPoint point;
    point.fpr = p.at(0).get<double>();
    point.tpr = p.at(1).get<double>();
    point.threshold = p.at(2).is_null() ? std::numeric_limits<double>::infinity()
                                        : p.at(2).get<double>();
    curve.points.push_back(point);
  }
  return curve;
}

json labels_to_json(const std::vector<Label>& labels) {
  json out = json::array();
  for (Label l : labels) out.push_back(l == Label::positive ? 1 : 0);
  return out;
}

std::vector<Label> labels_from_json(const json& j) {
  std::vector<Label> out;
  for (const auto& v : j)
    out.push_back(v.get<int>() == 1 ? Label::positive : Label::negative);
  return out;
}

}  // namespace

json cell_to_json(const BenchmarkCell& cell) {
  json j;
  j["dataset"] = cell.dataset;
  j["classifier"] = cell.classifier;
  j["method"] = method_tag(cell.method);
  j["fold"] = cell.fold;
  j["seed"] = cell.seed;
  j["error"] = cell.error;
  if (cell.error.empty()) {
    j["chosen"] = spec_to_json(cell.chosen);
    j["actual"] = labels_to_json(cell.actual);
    j["scores"] = cell.scores;
    j["confusion"] = {{"tp", cell.cm.tp}, {"fn", cell.cm.fn}, {"fp", cell.cm.fp}, {"tn", cell.cm.tn}};
    j["metrics"] = metricset_to_json(cell.metric);
    j["roc"] = roc_to_json(cell.roc_curve);
  }
  return j;
}

BenchmarkCell cell_from_json(const json& j) {
  BenchmarkCell cell;
  cell.dataset = j.at("dataset").get<std::string>();
  cell.classifier = j.at("classifier").get<std::string>();
  cell.method = method_from_tag(j.at("method").get<std::string>());
  cell.fold = j.at("fold").get<std::size_t>();
  cell.seed = j.at("seed").get<std::uint64_t>();
  cell.error = j.at("error").get<std::string>();
  if (cell.error.empty()) {
    cell.chosen = spec_from_json(j.at("chosen"));
    cell.actual = labels_from_json(j.at("actual"));
    cell.scores = j.at("scores").get<std::vector<double>>();
    const auto& cm = j.at("confusion");
    cell.cm = {cm.at("tp").get<std::size_t>(), cm.at("fn").get<std::size_t>(),
               cm.at("fp").get<std::size_t>(), cm.at("tn").get<std::size_t>()};
    cell.metric = metricset_from_json(j.at("metrics"));
    cell.roc_curve = roc_from_json(j.at("roc"));
  }
  return cell;
}

json report_to_json(const BenchmarkReport& report) {
  json j;
  j["schema_version"] = report.schema_version;
  j["seed"] = report.seed;
  j["k_folds"] = report.k_folds;
  j["inner_folds"] = report.inner_folds;
  j["datasets"] = report.dataset_names;
  j["classifiers"] = report.classifier_names;
  json methods = json::array();
  for (Method m : report.methods) methods.push_back(method_tag(m));
  j["methods"] = std::move(methods);

  json cells = json::array();
  for (const auto& cell : report.cells) cells.push_back(cell_to_json(cell));
  j["cells"] = std::move(cells);

  json summaries = json::array();
  for (const auto& s : report.summaries) {
    summaries.push_back({{"dataset", s.dataset},
                         {"classifier", s.classifier},
                         {"method", method_tag(s.method)},
                         {"folds_ok", s.folds_ok},
                         {"mean", metricset_to_json(s.mean)},
                         {"stddev", metricset_to_json(s.stddev)},
                         {"winner", s.winner}});
  }
  j["summaries"] = std::move(summaries);
  return j;
}

BenchmarkReport report_from_json(const json& j) {
  BenchmarkReport report;
  report.schema_version = j.at("schema_version").get<int>();
  if (report.schema_version != 1)
    throw Error::validation("unsupported report schema version " +
                            std::to_string(report.schema_version));
  report.seed = j.at("seed").get<std::uint64_t>();
  report.k_folds = j.at("k_folds").get<std::size_t>();
  report.inner_folds = j.at("inner_folds").get<std::size_t>();
  report.dataset_names = j.at("datasets").get<std::vector<std::string>>();
  report.classifier_names = j.at("classifiers").get<std::vector<std::string>>();
  for (const auto& tag : j.at("methods"))
    report.methods.push_back(method_from_tag(tag.get<std::string>()));
  for (const auto& cell : j.at("cells")) report.cells.push_back(cell_from_json(cell));
  for (const auto& s : j.at("summaries")) {
    MethodSummary summary;
    summary.dataset = s.at("dataset").get<std::string>();
    summary.classifier = s.at("classifier").get<std::string>();
    summary.method = method_from_tag(s.at("method").get<std::string>());
    summary.folds_ok = s.at("folds_ok").get<std::size_t>();
    summary.mean = metricset_from_json(s.at("mean"));
    summary.stddev = metricset_from_json(s.at("stddev"));
    summary.winner = s.at("winner").get<bool>();
    report.summaries.push_back(std::move(summary));
  }
  return report;
}

std::string report_to_string(const BenchmarkReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

BenchmarkReport report_from_string(const std::string& text) {
  try {
    return report_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw Error::validation(std::string("cannot parse report JSON: ") + e.what());
  }
}

namespace {

const MethodSummary* find_summary(const BenchmarkReport& report, const std::string& dataset,
                                  const std::string& classifier, Method method) {
  for (const auto& s : report.summaries)
    if (s.dataset == dataset && s.classifier == classifier && s.method == method) return &s;
  return nullptr;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

std::string render_auc_table(const BenchmarkReport& report, const std::string& classifier) {
  std::ostringstream out;
  out << "Dataset";
  for (Method m : report.methods) out << ',' << method_display_name(m);
  out << '\n';

  std::vector<std::size_t> wins(report.methods.size(), 0);
  for (const auto& dataset : report.dataset_names) {
    out << dataset;
    for (std::size_t m = 0; m < report.methods.size(); ++m) {
      const auto* s = find_summary(report, dataset, classifier, report.methods[m]);
      out << ',';
      if (s == nullptr || s->folds_ok == 0) {
        out << "error";
      } else {
        out << fixed4(s->mean.roc_auc);
        if (s->winner) ++wins[m];
      }
    }
    out << '\n';
  }

  out << "Total";
  for (std::size_t m = 0; m < report.methods.size(); ++m) out << ',' << wins[m];
  out << '\n';
  return out.str();
}

std::string winner_summary_line(const BenchmarkReport& report, const std::string& classifier) {
  std::vector<std::size_t> wins(report.methods.size(), 0);
  for (const auto& s : report.summaries) {
    if (s.classifier != classifier || !s.winner) continue;
    for (std::size_t m = 0; m < report.methods.size(); ++m)
      if (report.methods[m] == s.method) ++wins[m];
  }
  std::ostringstream out;
  out << classifier << ":";
  for (std::size_t m = 0; m < report.methods.size(); ++m)
    out << ' ' << method_display_name(report.methods[m]) << '=' << wins[m];
  out << " (datasets=" << report.dataset_names.size() << ")";
  return out.str();
}

std::string render_roc_csv(const RocCurve& curve) {
  std::ostringstream out;
  out << "fpr,tpr,threshold\n";
  for (const auto& p : curve.points) {
    out << fixed4(p.fpr) << ',' << fixed4(p.tpr) << ',';
    if (std::isfinite(p.threshold)) {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "%.12g", p.threshold);
      out << buf;
    } else {
      out << "inf";
    }
    out << '\n';
  }
  return out.str();
}

json diagnostics_to_json(const ResampleDiagnostics& d, Method method) {
  json j;
  j["method"] = method_tag(method);
  j["target_minority"] = d.target_minority;
  j["achieved_minority"] = d.achieved_minority;
  j["synthetic_count"] = d.synthetic_count;
  j["duplicate_count"] = d.duplicate_count;
  if (!d.warning.empty()) j["warning"] = d.warning;
  if (d.fell_back_to_smote) j["fell_back_to_smote"] = true;
  switch (method) {
    case Method::cfa:
      j["pair_count"] = d.pair_count;
      j["paired_majority"] = d.paired_majority_count;
      j["unpaired_majority"] = d.unpaired_majority_count;
      j["shortfall"] = d.shortfall;
      j["rejected_by_verifier"] = d.rejected_by_verifier;
      break;
    case Method::bsmote:
      j["noise_count"] = d.noise_count;
      j["danger_count"] = d.danger_count;
      j["safe_count"] = d.safe_count;
      j["danger_rows"] = d.danger_rows;
      break;
    case Method::adasyn:
      j["allocation"] = d.adasyn_allocation;
      break;
    case Method::slsmote:
      j["discarded_draws"] = d.discarded_draws;
      j["safe_levels"] = d.safe_levels;
      break;
    default:
      break;
  }
  return j;
}

}  // namespace cfaug
