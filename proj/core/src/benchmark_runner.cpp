#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "cfaug/benchmark.hpp"
#include "cfaug/error.hpp"
#include "cfaug/io_util.hpp"
#include "cfaug/random.hpp"
#include "cfaug/report_io.hpp"

namespace fs = std::filesystem;

namespace cfaug {

FileCellCache::FileCellCache(std::string directory) : directory_(std::move(directory)) {
  std::error_code ec;
  fs::create_directories(directory_, ec);
  if (ec) throw Error::io("cannot create cache directory " + directory_ + ": " + ec.message());
}

std::optional<nlohmann::json> FileCellCache::load(const std::string& key) {
  const fs::path file = fs::path(directory_) / (std::to_string(fnv1a64(key)) + ".json");
  if (!fs::exists(file)) return std::nullopt;
  try {
    auto doc = nlohmann::json::parse(read_file(file.string()));
    if (doc.at("key").get<std::string>() != key) return std::nullopt;  // hash collision
    return doc;
  } catch (...) {
    return std::nullopt;  // unreadable cache entries are recomputed
  }
}

void FileCellCache::store(const std::string& key, const nlohmann::json& cell) {
  const fs::path file = fs::path(directory_) / (std::to_string(fnv1a64(key)) + ".json");
  write_file_atomic(file.string(), cell.dump());
}

namespace {

std::string plan_signature(const ResamplePlan& plan) {
  std::ostringstream os;
  os << method_tag(plan.method) << ";k=" << plan.k_neighbors << ";m=" << plan.m_neighbors
     << ";target=" << (plan.target_count ? std::to_string(*plan.target_count) : "parity")
     << ";tol=" << plan.tolerance_factor << ";maxd=" << plan.max_diffs
     << ";verify=" << (plan.verify ? 1 : 0);
  return os.str();
}

std::string grid_signature(const ClassifierGrid& grid) {
  std::ostringstream os;
  os << grid.name << ";";
  for (const auto& spec : grid.grid) os << spec.describe() << ";";
  return os.str();
}

struct CellTask {
  std::size_t dataset_index;
  std::size_t classifier_index;
  std::size_t method_index;
  std::size_t fold;
  std::size_t slot;  // index into report.cells
};

void compute_cell(BenchmarkCell& cell, const NamedDataset& dataset,
                  const FoldAssignment& folds, const ResamplePlan& plan,
                  const ClassifierGrid& grid, const BenchmarkSettings& settings,
                  const AuditFn& audit) {
  const auto train_rows = folds.train_rows(cell.fold);
  const auto test_rows = folds.test_rows(cell.fold);
  const Dataset train_ds = dataset.data.subset(train_rows);

  ResamplePlan fold_plan = plan;
  fold_plan.seed = cell.seed;
  const ResampleResult resampled = oversample(train_ds, fold_plan);

  if (grid.grid.size() == 1) {
    cell.chosen = grid.grid[0];
  } else {
    const auto search = grid_search(grid.grid, resampled.augmented, settings.inner_folds,
                                    derive_seed(cell.seed, "grid"));
    cell.chosen = search.configs[search.best_index];
  }
  cell.chosen.seed = derive_seed(cell.seed, "final-train");

  const TrainedModel model = train(cell.chosen, resampled.augmented);
  cell.actual.reserve(test_rows.size());
  cell.scores.reserve(test_rows.size());
  std::vector<Label> predicted;
  predicted.reserve(test_rows.size());
  for (std::size_t r : test_rows) {
    cell.actual.push_back(dataset.data.label(r));
    const double s = model.score(dataset.data.row(r));
    cell.scores.push_back(s);
    predicted.push_back(s >= 0.5 ? Label::positive : Label::negative);
  }

  cell.cm = confusion(cell.actual, predicted);
  cell.metric = metrics(cell.cm);
  auto r = roc(cell.actual, cell.scores);
  cell.metric.roc_auc = r.auc;
  cell.roc_curve = std::move(r.curve);

  if (audit) audit(CellAudit{cell, train_rows, test_rows, resampled, dataset.data});
}

MetricSet mean_of(const std::vector<MetricSet>& sets) {
  MetricSet m;
  if (sets.empty()) return m;
  for (const auto& s : sets) {
    m.recall += s.recall;
    m.precision += s.precision;
    m.f1 += s.f1;
    m.balanced_accuracy += s.balanced_accuracy;
    m.roc_auc += s.roc_auc;
    m.recall_degenerate = m.recall_degenerate || s.recall_degenerate;
    m.precision_degenerate = m.precision_degenerate || s.precision_degenerate;
  }
  const double n = static_cast<double>(sets.size());
  m.recall /= n;
  m.precision /= n;
  m.f1 /= n;
  m.balanced_accuracy /= n;
  m.roc_auc /= n;
  return m;
}

MetricSet stddev_of(const std::vector<MetricSet>& sets, const MetricSet& mean) {
  MetricSet sd;
  if (sets.empty()) return sd;
  for (const auto& s : sets) {
    auto acc = [](double& out, double v, double mu) { out += (v - mu) * (v - mu); };
    acc(sd.recall, s.recall, mean.recall);
    acc(sd.precision, s.precision, mean.precision);
    acc(sd.f1, s.f1, mean.f1);
    acc(sd.balanced_accuracy, s.balanced_accuracy, mean.balanced_accuracy);
    acc(sd.roc_auc, s.roc_auc, mean.roc_auc);
  }
  const double n = static_cast<double>(sets.size());  // population std over folds
  sd.recall = std::sqrt(sd.recall / n);
  sd.precision = std::sqrt(sd.precision / n);
  sd.f1 = std::sqrt(sd.f1 / n);
  sd.balanced_accuracy = std::sqrt(sd.balanced_accuracy / n);
  sd.roc_auc = std::sqrt(sd.roc_auc / n);
  return sd;
}

}  // namespace

BenchmarkReport run_benchmark(std::span<const NamedDataset> datasets,
                              std::span<const ResamplePlan> methods,
                              std::span<const ClassifierGrid> classifiers,
                              const BenchmarkSettings& settings, CellCache* cache,
                              const AuditFn& audit) {
  if (datasets.empty()) throw Error::validation("run_benchmark: no datasets");
  if (classifiers.empty()) throw Error::validation("run_benchmark: no classifiers");
  if (settings.k_folds < 2) throw Error::validation("run_benchmark: k_folds must be >= 2");
  if (settings.inner_folds < 2) throw Error::validation("run_benchmark: inner_folds must be >= 2");
  for (const auto& d : datasets)
    if (!d.data.is_binary())
      throw Error::validation("dataset '" + d.name + "' is not binarized");
  for (const auto& g : classifiers) {
    if (g.grid.empty())
      throw Error::validation("classifier '" + g.name + "' has an empty grid");
    for (const auto& spec : g.grid) spec.validate();
  }

  // Baseline is always part of the sweep; methods appear in canonical order.
  std::vector<ResamplePlan> plans(methods.begin(), methods.end());
  if (std::none_of(plans.begin(), plans.end(),
                   [](const ResamplePlan& p) { return p.method == Method::baseline; })) {
    ResamplePlan baseline;
    baseline.method = Method::baseline;
    plans.insert(plans.begin(), baseline);
  }
  std::stable_sort(plans.begin(), plans.end(), [](const auto& a, const auto& b) {
    return method_order_index(a.method) < method_order_index(b.method);
  });
  for (std::size_t i = 1; i < plans.size(); ++i)
    if (plans[i].method == plans[i - 1].method)
      throw Error::validation("duplicate method in benchmark: " + method_tag(plans[i].method));

  BenchmarkReport report;
  report.seed = settings.seed;
  report.k_folds = settings.k_folds;
  report.inner_folds = settings.inner_folds;
  for (const auto& d : datasets) report.dataset_names.push_back(d.name);
  for (const auto& c : classifiers) report.classifier_names.push_back(c.name);
  for (const auto& p : plans) report.methods.push_back(p.method);

  // fold assignments are per dataset; failures poison all of its cells
  std::vector<FoldAssignment> folds(datasets.size());
  std::vector<std::string> fold_errors(datasets.size());
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    try {
      folds[d] = stratified_kfold(datasets[d].data, settings.k_folds,
                                  derive_seed(settings.seed, "folds|" + datasets[d].name));
    } catch (const Error& e) {
      fold_errors[d] = e.what();
    }
  }

  std::vector<CellTask> tasks;
  report.cells.clear();
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    for (std::size_t c = 0; c < classifiers.size(); ++c) {
      for (std::size_t m = 0; m < plans.size(); ++m) {
        for (std::size_t f = 0; f < settings.k_folds; ++f) {
          BenchmarkCell cell;
          cell.dataset = datasets[d].name;
          cell.classifier = classifiers[c].name;
          cell.method = plans[m].method;
          cell.fold = f;
          cell.seed = derive_seed(settings.seed,
                                  "cell|ds=" + cell.dataset + "|m=" + method_tag(cell.method) +
                                      "|c=" + cell.classifier + "|fold=" + std::to_string(f));
          tasks.push_back({d, c, m, f, report.cells.size()});
          report.cells.push_back(std::move(cell));
        }
      }
    }
  }

  // With an auditor attached every cell must actually run, so the cache is
  // bypassed (a cache hit has no resampled training set to audit).
  CellCache* effective_cache = audit ? nullptr : cache;
  std::mutex cache_mutex;

  auto run_task = [&](const CellTask& task) {
    BenchmarkCell& cell = report.cells[task.slot];
    if (!fold_errors[task.dataset_index].empty()) {
      cell.error = fold_errors[task.dataset_index];
      return;
    }

    std::string cache_key;
    if (effective_cache) {
      std::ostringstream key;
      key << "v1|ds=" << cell.dataset << ":" << dataset_fingerprint(datasets[task.dataset_index].data)
          << "|m=" << plan_signature(plans[task.method_index])
          << "|c=" << grid_signature(classifiers[task.classifier_index])
          << "|fold=" << cell.fold << "|k=" << settings.k_folds
          << "|inner=" << settings.inner_folds << "|seed=" << cell.seed;
      cache_key = key.str();
      std::optional<nlohmann::json> hit;
      {
        std::lock_guard<std::mutex> lock(cache_mutex);
        hit = effective_cache->load(cache_key);
      }
      if (hit) {
        cell = cell_from_json(hit->at("cell"));
        return;
      }
    }

    try {
      compute_cell(cell, datasets[task.dataset_index], folds[task.dataset_index],
                   plans[task.method_index], classifiers[task.classifier_index], settings,
                   audit);
    } catch (const Error& e) {
      cell.error = e.what();
    } catch (const std::exception& e) {
      cell.error = std::string("unexpected: ") + e.what();
    }
    if (!cell.error.empty()) {  // drop any partial results from the failed attempt
      cell.actual.clear();
      cell.scores.clear();
      cell.roc_curve.points.clear();
      cell.cm = {};
      cell.metric = {};
    }

    if (effective_cache) {
      nlohmann::json entry;
      entry["key"] = cache_key;
      entry["cell"] = cell_to_json(cell);
      std::lock_guard<std::mutex> lock(cache_mutex);
      effective_cache->store(cache_key, entry);
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(settings.jobs, tasks.size()));
  if (jobs == 1) {
    for (const auto& task : tasks) run_task(task);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) break;
          run_task(tasks[i]);
        }
      });
    }
    for (auto& t : workers) t.join();
  }

  summarize_report(report);
  return report;
}

void summarize_report(BenchmarkReport& report) {
  for (auto& cell : report.cells) {
    if (!cell.error.empty()) continue;
    std::vector<Label> predicted;
    predicted.reserve(cell.scores.size());
    for (double s : cell.scores)
      predicted.push_back(s >= 0.5 ? Label::positive : Label::negative);
    cell.cm = confusion(cell.actual, predicted);
    cell.metric = metrics(cell.cm);
    auto r = roc(cell.actual, cell.scores);
    cell.metric.roc_auc = r.auc;
    cell.roc_curve = std::move(r.curve);
  }

  report.summaries.clear();
  for (const auto& dataset : report.dataset_names) {
    for (const auto& classifier : report.classifier_names) {
      std::size_t winner_index = report.methods.size();
      double winner_auc = -1.0;
      std::vector<MethodSummary> block;
      for (Method method : report.methods) {
        MethodSummary s;
        s.dataset = dataset;
        s.classifier = classifier;
        s.method = method;
        std::vector<MetricSet> ok;
        for (const auto& cell : report.cells) {
          if (cell.dataset != dataset || cell.classifier != classifier ||
              cell.method != method || !cell.error.empty())
            continue;
          ok.push_back(cell.metric);
        }
        s.folds_ok = ok.size();
        s.mean = mean_of(ok);
        s.stddev = stddev_of(ok, s.mean);
        if (s.folds_ok > 0 && s.mean.roc_auc > winner_auc) {  // ties keep the earlier method
          winner_auc = s.mean.roc_auc;
          winner_index = block.size();
        }
        block.push_back(std::move(s));
      }
      if (winner_index < block.size()) block[winner_index].winner = true;
      for (auto& s : block) report.summaries.push_back(std::move(s));
    }
  }
}

}  // namespace cfaug
