// Acceptance suite: one check per release criterion, one PASS/FAIL line each.
// Several checks need the public Pima and Glass CSV files; point CFAUG_DATA_DIR
// at the directory produced by scripts/fetch_datasets.py.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cfaug/benchmark.hpp"
#include "cfaug/cf_engine.hpp"
#include "cfaug/classifiers.hpp"
#include "cfaug/dataset.hpp"
#include "cfaug/error.hpp"
#include "cfaug/evaluation.hpp"
#include "cfaug/random.hpp"
#include "cfaug/report_io.hpp"
#include "cfaug/resample.hpp"
#include "cfaug/smote_family.hpp"
#include "support/oracles.hpp"
#include "support/toys.hpp"

using namespace cfaug;
namespace fs = std::filesystem;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw Failure(message);
}

std::string data_dir() {
  const char* dir = std::getenv("CFAUG_DATA_DIR");
  return dir ? dir : "data";
}

// blob settings shared by the desk-scale checks: IR = 10, n = 1100
constexpr std::size_t kBlobMinority = 100;
constexpr std::size_t kBlobMajority = 1000;
constexpr double kBlobSeparation = 2.0;

// CFA on 2-D data: max_diffs must stay below the feature count or every
// (x, p) combination pairs and no unpaired instances remain; a small
// tolerance keeps a healthy unpaired pool on continuous features
ResamplePlan blob_cfa_plan() {
  ResamplePlan plan;
  plan.method = Method::cfa;
  plan.max_diffs = 1;
  plan.tolerance_factor = 0.01;
  return plan;
}

std::vector<ResamplePlan> blob_methods() {
  std::vector<ResamplePlan> methods;
  ResamplePlan baseline;
  baseline.method = Method::baseline;
  methods.push_back(baseline);
  for (Method m : {Method::smote, Method::bsmote, Method::adasyn, Method::slsmote}) {
    ResamplePlan plan;
    plan.method = m;
    plan.k_neighbors = 5;
    methods.push_back(plan);
  }
  methods.push_back(blob_cfa_plan());
  return methods;
}

// ---- criteria -------------------------------------------------------------

void check_dataset_fidelity() {
  const fs::path dir = data_dir();
  const fs::path pima = dir / "pima.csv";
  const fs::path glass = dir / "glass.csv";
  require(fs::exists(pima) && fs::exists(glass),
          "needs the public Pima and Glass files at " + dir.string() +
              "/{pima,glass}.csv; run scripts/fetch_datasets.py (network required)");

  const auto t0 = std::chrono::steady_clock::now();
  const Dataset pima_ds = binarize(load_csv(pima.string()), {});
  const auto pima_summary = summarize(pima_ds);
  require(pima_summary.n_instances == 768,
          "pima instances: expected 768, got " + std::to_string(pima_summary.n_instances));
  require(pima_summary.n_minority == 268,
          "pima minority: expected 268, got " + std::to_string(pima_summary.n_minority));
  require(pima_summary.n_majority == 500,
          "pima majority: expected 500, got " + std::to_string(pima_summary.n_majority));
  const double pima_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(pima_seconds < 1.0, "pima inspection took too long");

  const auto t1 = std::chrono::steady_clock::now();
  const Dataset glass_ds =
      binarize(load_csv(glass.string()), {BinarizeSpec::Mode::one_vs_rest, "3", ""});
  const auto glass_summary = summarize(glass_ds);
  require(glass_summary.n_minority == 17,
          "glass-3 minority: expected 17, got " + std::to_string(glass_summary.n_minority));
  require(glass_summary.n_majority == 197,
          "glass-3 majority: expected 197, got " + std::to_string(glass_summary.n_majority));
  const double glass_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
  require(glass_seconds < 1.0, "glass inspection took too long");
}

void check_cf_set_oracle() {
  Rng rng(20240117);
  std::uniform_real_distribution<double> tol_value(0.0, 0.8);
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset ds = test::random_binary(rng, 100, 8);
    ToleranceTable tol;
    tol.thresholds.resize(ds.n_features());
    for (auto& t : tol.thresholds) t = tol_value(rng);

    const CFSet cf = compute_cf_set(ds, tol, 2);
    const auto expected = test::brute_force_pairs(ds, tol.thresholds, 2);
    require(cf.pairs.size() == expected.size(),
            "trial " + std::to_string(trial) + ": pair count mismatch");
    for (std::size_t i = 0; i < expected.size(); ++i) {
      require(cf.pairs[i].majority_row == expected[i].majority_row &&
                  cf.pairs[i].minority_row == expected[i].minority_row &&
                  cf.pairs[i].diff_features == expected[i].diff_features,
              "trial " + std::to_string(trial) + ": pair " + std::to_string(i) + " differs");
    }
    require(cf.unpaired_majority == test::brute_force_unpaired(ds, expected),
            "trial " + std::to_string(trial) + ": unpaired set differs");
  }
}

void audit_no_interpolation(const Dataset& source, const ResampleResult& result,
                            std::size_t& audited) {
  for (std::size_t s = 0; s < result.provenance.size(); ++s) {
    const auto& prov = result.provenance[s];
    const auto synthetic = result.augmented.row(result.original_rows + s);
    const auto x_prime = source.row(prov.base_row);
    const auto p = source.row(prov.template_row);
    for (std::size_t f = 0; f < source.n_features(); ++f) {
      require(synthetic[f] == x_prime[f] || synthetic[f] == p[f],
              "synthetic value interpolated rather than copied");
      ++audited;
    }
  }
}

void check_cfa_no_interpolation() {
  std::size_t audited = 0;
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Dataset ds = test::random_binary(rng, 80, 6);
    CfaOptions opt;
    opt.tolerance_factor = 0.3;
    opt.seed = static_cast<std::uint64_t>(trial);
    try {
      audit_no_interpolation(ds, cfa_oversample(ds, opt), audited);
    } catch (const Error&) {
      continue;  // E_NO_PAIRS draws are fine here
    }
  }
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Dataset ds = test::gaussian_blobs(seed, kBlobMinority, kBlobMajority, kBlobSeparation);
    ResamplePlan plan = blob_cfa_plan();
    plan.seed = seed;
    audit_no_interpolation(ds, oversample(ds, plan), audited);
  }
  require(audited > 2000, "audit covered too few synthetic values: " + std::to_string(audited));
}

void check_eq1_geometry() {
  const Dataset ds = test::gaussian_blobs(99, 60, 400, 2.5);
  ResamplePlan plan;
  plan.method = Method::smote;
  plan.k_neighbors = 5;
  plan.seed = 12345;
  plan.target_count = ds.n_positive() + 10000;
  const ResampleResult result = smote(ds, plan);
  require(result.provenance.size() == 10000, "expected exactly 10000 synthetics");

  for (std::size_t s = 0; s < result.provenance.size(); ++s) {
    const auto& prov = result.provenance[s];
    const auto synthetic = result.augmented.row(result.original_rows + s);
    const auto p = ds.row(prov.base_row);
    const auto m = ds.row(prov.neighbor_row);
    require(prov.delta >= 0.0 && prov.delta < 1.0, "delta outside [0,1)");
    for (std::size_t f = 0; f < ds.n_features(); ++f) {
      require(synthetic[f] >= std::min(p[f], m[f]) && synthetic[f] <= std::max(p[f], m[f]),
              "synthetic left the closed segment [p_i, m']");
    }
  }

  // interpolation endpoints
  const std::vector<double> p{1.0, -3.0};
  const std::vector<double> m{4.0, 5.0};
  require(interpolate(p, m, 0.0) == p, "delta = 0 must return p_i bit-exactly");
  const auto near_m = interpolate(p, m, 1.0 - 1e-13);
  for (std::size_t f = 0; f < p.size(); ++f)
    require(std::abs(near_m[f] - m[f]) < 1e-10, "delta -> 1 must approach m'");
}

void check_bsmote_intervals() {
  for (std::size_t m_prime = 0; m_prime <= 5; ++m_prime) {
    const auto kind = classify_neighborhood(m_prime, 5);
    if (m_prime == 5) require(kind == NeighborhoodKind::noise, "m'=5 must be noise");
    else if (m_prime >= 3) require(kind == NeighborhoodKind::danger,
                                   "m'=" + std::to_string(m_prime) + " must be danger");
    else require(kind == NeighborhoodKind::safe,
                 "m'=" + std::to_string(m_prime) + " must be safe");
  }

  // constructed 1-D neighborhoods realizing every class through the full
  // borderline-smote path: m' = 5 noise; m' in {3,4} danger; m' in {0,1,2} safe
  const auto ds = test::make_binary(
      {
          {1}, {2}, {3}, {4}, {5},                  // swarm around the noise point
          {99}, {102}, {103},                       // m' = 3 cluster majority
          {401}, {402}, {403}, {404},               // m' = 4 cluster majority
          {205},                                    // m' = 1 cluster edge majority
          {603}, {604},                             // m' = 2 cluster majority
          {900}, {901}, {902}, {903}, {904}, {905}, // distant filler majority
          {0},                                      // noise minority (m' = 5)
          {100}, {101}, {104},                      // danger minority (m' = 3)
          {400}, {405},                             // danger minority (m' = 4)
          {200}, {201}, {202}, {203}, {204},        // safe minority (m' = 1)
          {600}, {601}, {602}, {605},               // safe minority (m' = 2)
          {700}, {701}, {702}, {703}, {704}, {705}, // safe minority (m' = 0)
      },
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
       1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1});
  ResamplePlan plan;
  plan.method = Method::bsmote;
  plan.k_neighbors = 5;
  plan.m_neighbors = 5;
  plan.seed = 2;
  plan.target_count = ds.n_positive() + 4;  // counts matter here, not volume
  const auto result = borderline_smote(ds, plan);
  require(result.diagnostics.noise_count == 1,
          "noise_count: expected 1, got " + std::to_string(result.diagnostics.noise_count));
  require(result.diagnostics.danger_count == 5,
          "danger_count: expected 5, got " + std::to_string(result.diagnostics.danger_count));
  require(result.diagnostics.safe_count == 15,
          "safe_count: expected 15, got " + std::to_string(result.diagnostics.safe_count));
}

void check_adasyn_conservation() {
  Rng rng(31337);
  std::uniform_int_distribution<std::size_t> n_dist(1, 60);
  std::uniform_int_distribution<std::size_t> count(0, 7);
  std::uniform_int_distribution<std::size_t> total_dist(0, 2000);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = n_dist(rng);
    std::vector<std::size_t> counts(n);
    for (auto& c : counts) c = count(rng);
    const std::size_t total = total_dist(rng);

    const auto g = adasyn_allocation(counts, 7, total);
    const bool all_zero = std::all_of(counts.begin(), counts.end(),
                                      [](std::size_t c) { return c == 0; });
    if (all_zero) {
      require(g.empty(), "separable input must yield the fallback marker");
      continue;
    }
    std::size_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += g[i];
      if (counts[i] == 0)
        require(g[i] == 0, "g_i must be 0 when delta_i = 0 and some delta_j > 0");
    }
    require(sum == total, "allocation must sum to G exactly");
  }
}

void check_metric_arithmetic() {
  // twenty enumerated confusion matrices against independent arithmetic
  const std::size_t cases[20][4] = {
      {3, 1, 2, 4},  {0, 0, 0, 1},  {1, 0, 0, 0},  {0, 1, 0, 0},   {0, 0, 1, 0},
      {5, 5, 5, 5},  {10, 0, 0, 10}, {0, 10, 10, 0}, {7, 3, 0, 9},  {1, 9, 9, 1},
      {2, 2, 3, 3},  {100, 1, 1, 100}, {1, 100, 100, 1}, {4, 0, 4, 0}, {0, 4, 0, 4},
      {13, 7, 5, 25}, {8, 2, 6, 14},  {50, 25, 10, 15}, {1, 1, 1, 1}, {9, 0, 3, 8},
  };
  for (const auto& c : cases) {
    const ConfusionMatrix cm{c[0], c[1], c[2], c[3]};
    const MetricSet m = metrics(cm);
    const double tp = double(c[0]), fn = double(c[1]), fp = double(c[2]), tn = double(c[3]);
    const double recall = tp + fn == 0 ? 0.0 : tp / (tp + fn);
    const double precision = tp + fp == 0 ? 0.0 : tp / (tp + fp);
    const double f1 = precision + recall == 0 ? 0.0
                                              : 2.0 * precision * recall / (precision + recall);
    const double tnr = fp + tn == 0 ? 0.0 : tn / (fp + tn);
    const double balanced = (recall + tnr) / 2.0;
    require(std::abs(m.recall - recall) <= 1e-12, "recall mismatch");
    require(std::abs(m.precision - precision) <= 1e-12, "precision mismatch");
    require(std::abs(m.f1 - f1) <= 1e-12, "f1 mismatch");
    require(std::abs(m.balanced_accuracy - balanced) <= 1e-12, "balanced accuracy mismatch");
  }

  // trapezoidal auc vs the pairwise oracle on 1000 random score vectors
  Rng rng(555);
  std::uniform_real_distribution<double> uniform_score(0.0, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> quantized(0, 6);
  std::uniform_int_distribution<std::size_t> size(2, 120);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = size(rng);
    std::vector<Label> actual(n);
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
      actual[i] = coin(rng) == 1 ? Label::positive : Label::negative;
      scores[i] = trial % 2 == 0 ? uniform_score(rng) : quantized(rng) / 6.0;
    }
    actual[0] = Label::positive;
    actual[n - 1] = Label::negative;
    const double auc = roc(actual, scores).auc;
    const double oracle = test::mann_whitney_auc(actual, scores);
    require(std::abs(auc - oracle) <= 1e-12,
            "auc mismatch at trial " + std::to_string(trial));
  }
}

void check_logreg_gradient() {
  Rng rng(8080);
  std::uniform_real_distribution<double> value(-2.0, 2.0);
  std::uniform_real_distribution<double> c_value(0.05, 50.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Dataset ds = test::random_binary(rng, 30, 5);
    const std::size_t f = ds.n_features();
    std::vector<double> w(f);
    for (auto& v : w) v = value(rng);
    const double b = value(rng);
    const double c = c_value(rng);

    std::vector<double> grad(f);
    double grad_b = 0.0;
    logreg_gradient(w, b, ds, c, grad, grad_b);

    const double h = 1e-6;
    auto check_component = [&](double analytic, double fd) {
      const double rel = std::abs(fd - analytic) / std::max(1.0, std::abs(fd));
      require(rel < 1e-5, "gradient relative error " + std::to_string(rel));
    };
    for (std::size_t j = 0; j < f; ++j) {
      auto wp = w, wm = w;
      wp[j] += h;
      wm[j] -= h;
      check_component(grad[j], (logreg_loss(wp, b, ds, c) - logreg_loss(wm, b, ds, c)) / (2 * h));
    }
    check_component(grad_b, (logreg_loss(w, b + h, ds, c) - logreg_loss(w, b - h, ds, c)) / (2 * h));
  }
}

void check_leakage_audit() {
  std::vector<NamedDataset> datasets;
  datasets.push_back({"blobA", test::gaussian_blobs(41, 30, 90, 2.5)});
  datasets.push_back({"blobB", test::gaussian_blobs(42, 24, 96, 3.0)});

  std::vector<ResamplePlan> methods;
  for (Method m : {Method::smote, Method::bsmote, Method::adasyn, Method::slsmote}) {
    ResamplePlan plan;
    plan.method = m;
    plan.k_neighbors = 3;
    methods.push_back(plan);
  }
  methods.push_back(blob_cfa_plan());

  ClassifierSpec knn;
  knn.kind = ClassifierKind::knn;
  knn.n_neighbors = 3;
  const ClassifierGrid grids[] = {{"knn", {knn}}};

  BenchmarkSettings settings;
  settings.k_folds = 3;
  settings.inner_folds = 2;
  settings.seed = 777;

  std::size_t cells_audited = 0;
  std::size_t rows_checked = 0;
  const auto audit = [&](const CellAudit& ctx) {
    ++cells_audited;
    std::set<std::size_t> train(ctx.train_rows.begin(), ctx.train_rows.end());
    for (std::size_t t : ctx.test_rows)
      require(train.count(t) == 0, "a test row index leaked into the training split");

    // provenance must reference training-local rows only
    const std::size_t train_size = ctx.train_rows.size();
    for (const auto& prov : ctx.resampled.provenance) {
      require(prov.base_row < train_size && prov.neighbor_row < train_size,
              "provenance references a row outside the training split");
    }

    // no resampled-training feature vector may equal a test row
    std::vector<std::vector<double>> test_vectors;
    for (std::size_t t : ctx.test_rows) {
      auto row = ctx.full_dataset.row(t);
      test_vectors.emplace_back(row.begin(), row.end());
    }
    std::sort(test_vectors.begin(), test_vectors.end());
    for (std::size_t i = 0; i < ctx.resampled.augmented.n_instances(); ++i) {
      auto row = ctx.resampled.augmented.row(i);
      const std::vector<double> v(row.begin(), row.end());
      require(!std::binary_search(test_vectors.begin(), test_vectors.end(), v),
              "a test-fold feature vector appeared in the resampled training set");
      ++rows_checked;
    }
  };

  run_benchmark(datasets, methods, grids, settings, nullptr, audit);
  require(cells_audited == 2 * 6 * 3, "expected every cell to be audited");
  require(rows_checked > 1000, "audit scanned too few rows");
}

void check_determinism() {
  std::vector<NamedDataset> datasets;
  datasets.push_back({"blob", test::gaussian_blobs(17, 40, 120, 2.5)});
  std::vector<ResamplePlan> methods = blob_methods();
  for (auto& m : methods) m.k_neighbors = std::min<std::size_t>(m.k_neighbors, 3);

  ClassifierSpec knn;
  knn.kind = ClassifierKind::knn;
  knn.n_neighbors = 3;
  ClassifierSpec forest;
  forest.kind = ClassifierKind::rforest;
  forest.n_trees = 20;
  forest.max_depth = 6;
  std::vector<ClassifierGrid> grids{{"knn", {knn}}, {"rforest", {forest}}};

  BenchmarkSettings settings;
  settings.k_folds = 3;
  settings.inner_folds = 2;
  settings.seed = 424242;

  const auto first = report_to_string(run_benchmark(datasets, methods, grids, settings));
  const auto second = report_to_string(run_benchmark(datasets, methods, grids, settings));
  require(first == second, "two identical runs produced different reports");
  require(first.find("\"cells\"") != std::string::npos, "report looks empty");
}

struct DirectionalOutcome {
  std::map<Method, double> mean_recall;
  std::map<Method, double> mean_auc;
};

DirectionalOutcome run_directional() {
  const auto methods = blob_methods();
  ClassifierSpec knn;
  knn.kind = ClassifierKind::knn;
  knn.n_neighbors = 5;
  const std::vector<ClassifierGrid> grids{{"knn", {knn}}};

  std::map<Method, double> recall_sum, auc_sum;
  std::map<Method, std::size_t> n;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::vector<NamedDataset> datasets;
    datasets.push_back({"blob" + std::to_string(seed),
                        test::gaussian_blobs(1000 + seed, kBlobMinority, kBlobMajority,
                                             kBlobSeparation)});
    BenchmarkSettings settings;
    settings.k_folds = 5;
    settings.inner_folds = 2;
    settings.seed = 9000 + seed;

    const auto report = run_benchmark(datasets, methods, grids, settings);
    for (const auto& cell : report.cells) {
      require(cell.error.empty(), "cell failed: " + cell.error);
      recall_sum[cell.method] += cell.metric.recall;
      auc_sum[cell.method] += cell.metric.roc_auc;
      n[cell.method] += 1;
    }
  }

  DirectionalOutcome out;
  for (const auto& [method, sum] : recall_sum) {
    out.mean_recall[method] = sum / static_cast<double>(n[method]);
    out.mean_auc[method] = auc_sum[method] / static_cast<double>(n[method]);
  }
  return out;
}

void check_directional_blobs() {
  const auto outcome = run_directional();
  const double baseline_recall = outcome.mean_recall.at(Method::baseline);

  std::ostringstream detail;
  detail.setf(std::ios::fixed);
  detail.precision(3);
  detail << "recall: baseline=" << baseline_recall;
  for (Method m : {Method::smote, Method::bsmote, Method::adasyn, Method::slsmote, Method::cfa})
    detail << " " << method_tag(m) << "=" << outcome.mean_recall.at(m);
  std::printf("       %s\n", detail.str().c_str());

  for (Method m : {Method::smote, Method::bsmote, Method::adasyn, Method::slsmote, Method::cfa}) {
    const double lift = outcome.mean_recall.at(m) - baseline_recall;
    require(lift >= 0.05, method_tag(m) + " recall lift " + std::to_string(lift) +
                              " is below the 0.05 floor");
  }

  double best_smote_auc = 0.0;
  for (Method m : {Method::smote, Method::bsmote, Method::adasyn, Method::slsmote})
    best_smote_auc = std::max(best_smote_auc, outcome.mean_auc.at(m));
  const double cfa_auc = outcome.mean_auc.at(Method::cfa);
  std::printf("       auc: cfa=%.3f best_smote_variant=%.3f\n", cfa_auc, best_smote_auc);
  require(cfa_auc >= best_smote_auc - 0.05,
          "cfa auc " + std::to_string(cfa_auc) + " trails the best variant " +
              std::to_string(best_smote_auc) + " by more than 0.05");
}

void check_pima_rf_band() {
  const fs::path pima = fs::path(data_dir()) / "pima.csv";
  require(fs::exists(pima),
          "needs the public Pima file at " + pima.string() +
              "; run scripts/fetch_datasets.py (network required)");

  const Dataset ds = binarize(load_csv(pima.string()), {});
  const FoldAssignment folds = stratified_kfold(ds, 5, 20240117);

  ClassifierSpec spec;
  spec.kind = ClassifierKind::rforest;
  spec.n_trees = 200;
  spec.max_depth = 10;

  double auc_sum = 0.0;
  for (std::size_t f = 0; f < 5; ++f) {
    spec.seed = derive_seed(1, "pima-band-fold" + std::to_string(f));
    const TrainedModel model = train(spec, ds.subset(folds.train_rows(f)));
    std::vector<Label> actual;
    std::vector<double> scores;
    for (std::size_t r : folds.test_rows(f)) {
      actual.push_back(ds.label(r));
      scores.push_back(model.score(ds.row(r)));
    }
    auc_sum += roc(actual, scores).auc;
  }
  const double mean_auc = auc_sum / 5.0;
  std::printf("       pima baseline rforest auc=%.4f (band [0.75, 0.92])\n", mean_auc);
  require(mean_auc >= 0.75 && mean_auc <= 0.92,
          "mean auc " + std::to_string(mean_auc) + " outside [0.75, 0.92]");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void()> check;
  };
  const std::vector<Criterion> criteria = {
      {"dataset-fidelity: Pima 768/268/500 and Glass-3 17/197, exact", check_dataset_fidelity},
      {"cf-set-oracle: exact match with brute force on 50 random datasets", check_cf_set_oracle},
      {"cfa-no-interpolation: every synthetic value copied bit-exactly", check_cfa_no_interpolation},
      {"eq1-geometry: 10000 smote synthetics inside [p_i, m'] per coordinate", check_eq1_geometry},
      {"bsmote-intervals: m'=5 noise, {3,4} danger, {0,1,2} safe", check_bsmote_intervals},
      {"adasyn-conservation: sum g_i = G on 1000 random inputs", check_adasyn_conservation},
      {"metric-arithmetic: confusion metrics and auc vs pairwise oracle, 1e-12", check_metric_arithmetic},
      {"logreg-gradient: analytic vs central differences, rel err < 1e-5", check_logreg_gradient},
      {"leakage-audit: no test rows or vectors in any resampled training set", check_leakage_audit},
      {"determinism: identical config and seed give byte-identical reports", check_determinism},
      {"directional-blobs: every oversampler lifts knn recall; cfa auc competitive", check_directional_blobs},
      {"pima-rf-band: baseline random-forest 5-fold auc within [0.75, 0.92]", check_pima_rf_band},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      criterion.check();
    } catch (const Failure& e) {
      error = e.what();
    } catch (const std::exception& e) {
      error = std::string("unexpected exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (error.empty()) {
      std::printf("[PASS] %s (%.2f s)\n", criterion.name, seconds);
    } else {
      std::printf("[FAIL] %s (%.2f s)\n       %s\n", criterion.name, seconds, error.c_str());
      ++failures;
    }
  }
  if (failures > 0) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
