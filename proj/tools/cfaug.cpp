// cfaug: inspect datasets, run a single oversampler, or sweep the full
// (dataset x method x classifier x fold) benchmark grid.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cfaug/benchmark.hpp"
#include "cfaug/cf_engine.hpp"
#include "cfaug/dataset.hpp"
#include "cfaug/error.hpp"
#include "cfaug/io_util.hpp"
#include "cfaug/random.hpp"
#include "cfaug/report_io.hpp"
#include "cfaug/resample.hpp"
#include "cfaug/run_config.hpp"

namespace fs = std::filesystem;
using namespace cfaug;

namespace {

struct InspectArgs {
  std::string data_path;
  std::string label_column;
  std::string pos_class;
  std::string neg_class;
  std::string header = "auto";
  double tolerance = 0.1;
  std::size_t max_diffs = 2;
};

struct ConfigArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::size_t jobs = 1;
  std::optional<double> tolerance;
  std::optional<std::size_t> max_diffs;
  bool verify = false;
};

CsvOptions csv_options(const InspectArgs& args) {
  CsvOptions csv;
  if (!args.label_column.empty()) csv.label_column = args.label_column;
  if (args.header == "yes") csv.header = CsvOptions::Header::yes;
  else if (args.header == "no") csv.header = CsvOptions::Header::no;
  else if (args.header == "auto") csv.header = CsvOptions::Header::automatic;
  else throw Error::validation("--header must be auto, yes or no");
  return csv;
}

BinarizeSpec binarize_spec(const InspectArgs& args) {
  BinarizeSpec spec;
  if (!args.pos_class.empty() && !args.neg_class.empty()) {
    spec.mode = BinarizeSpec::Mode::one_vs_one;
    spec.positive = args.pos_class;
    spec.negative = args.neg_class;
  } else if (!args.pos_class.empty()) {
    spec.mode = BinarizeSpec::Mode::one_vs_rest;
    spec.positive = args.pos_class;
  } else {
    spec.mode = BinarizeSpec::Mode::automatic;
  }
  return spec;
}

int cmd_inspect(const InspectArgs& args) {
  const Dataset raw = load_csv(args.data_path, csv_options(args));
  const Dataset ds = binarize(raw, binarize_spec(args));
  const DatasetSummary summary = summarize(ds);

  std::printf("file=%s instances=%zu features=%zu classes=%zu\n", args.data_path.c_str(),
              summary.n_instances, summary.n_features, raw.class_names().size());
  std::printf("minority=%zu majority=%zu IR=%.2f\n", summary.n_minority, summary.n_majority,
              summary.imbalance_ratio);

  const ToleranceTable tol = make_tolerance(feature_stats(ds), args.tolerance);
  const CFSet cf = compute_cf_set(ds, tol, args.max_diffs);
  std::printf("tolerance=%g max_diffs=%zu\n", args.tolerance, args.max_diffs);
  std::printf("pairs=%zu paired=%zu unpaired=%zu\n", cf.pairs.size(),
              cf.paired_majority.size(), cf.unpaired_majority.size());
  return 0;
}

RunConfig load_config(const ConfigArgs& args) {
  if (!fs::exists(args.config_path))
    throw Error::validation("config file does not exist: " + args.config_path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(args.config_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error::validation("config: invalid JSON: " + std::string(e.what()));
  }
  if (args.seed) doc["seed"] = *args.seed;
  RunConfig config = parse_run_config(doc);
  if (!args.out_dir.empty()) config.output_dir = args.out_dir;

  for (auto& plan : config.methods) {
    if (plan.method != Method::cfa) continue;
    if (args.tolerance) plan.tolerance_factor = *args.tolerance;
    if (args.max_diffs) plan.max_diffs = *args.max_diffs;
    if (args.verify) plan.verify = true;
  }
  return config;
}

int cmd_resample(const ConfigArgs& args) {
  const RunConfig config = load_config(args);
  if (config.methods.size() != 1)
    throw Error::validation("resample needs a config naming exactly one method, found " +
                            std::to_string(config.methods.size()));

  const auto datasets = load_datasets(config);
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    ResamplePlan plan = config.methods[0];
    plan.seed = derive_seed(config.seed, "resample|ds=" + datasets[d].name +
                                             "|m=" + method_tag(plan.method));
    const ResampleResult result = oversample(datasets[d].data, plan);

    const std::string stem =
        (fs::path(config.output_dir) / (datasets[d].name + "_" + method_tag(plan.method))).string();
    const auto provenance = result.provenance_column();
    write_csv(result.augmented, stem + ".csv", provenance);
    write_file_atomic(stem + "_diagnostics.json",
                      diagnostics_to_json(result.diagnostics, plan.method).dump(2) + "\n");

    const auto& diag = result.diagnostics;
    std::string extras;
    if (diag.shortfall > 0) extras += " shortfall=" + std::to_string(diag.shortfall);
    if (diag.synthetic_count == 0) extras += " (nothing to do)";
    std::printf("resampled dataset=%s method=%s synthetics=%zu minority=%zu majority=%zu%s -> %s.csv\n",
                datasets[d].name.c_str(), method_tag(plan.method).c_str(), diag.synthetic_count,
                result.augmented.n_positive(), result.augmented.n_negative(), extras.c_str(),
                stem.c_str());
  }
  return 0;
}

void write_benchmark_outputs(const BenchmarkReport& report, const std::string& out_dir) {
  write_file_atomic((fs::path(out_dir) / "report.json").string(), report_to_string(report));
  for (const auto& classifier : report.classifier_names) {
    write_file_atomic((fs::path(out_dir) / ("auc_" + classifier + ".csv")).string(),
                      render_auc_table(report, classifier));
  }
  for (const auto& cell : report.cells) {
    if (!cell.error.empty()) continue;
    const std::string name = cell.dataset + "_" + method_tag(cell.method) + "_" +
                             cell.classifier + "_fold" + std::to_string(cell.fold) + ".csv";
    write_file_atomic((fs::path(out_dir) / "roc" / name).string(),
                      render_roc_csv(cell.roc_curve));
  }
  for (const auto& classifier : report.classifier_names)
    std::printf("%s\n", winner_summary_line(report, classifier).c_str());
}

int cmd_benchmark(const ConfigArgs& args) {
  const RunConfig config = load_config(args);
  const auto datasets = load_datasets(config);

  std::vector<ClassifierGrid> grids;
  for (const auto& c : config.classifiers) grids.push_back({c.name, c.grid});

  BenchmarkSettings settings;
  settings.k_folds = config.k_folds;
  settings.inner_folds = config.inner_folds;
  settings.jobs = args.jobs;
  settings.seed = config.seed;

  FileCellCache cache((fs::path(config.output_dir) / "cache").string());
  const BenchmarkReport report =
      run_benchmark(datasets, config.methods, grids, settings, &cache);

  write_benchmark_outputs(report, config.output_dir);

  const bool all_failed = std::all_of(report.cells.begin(), report.cells.end(),
                                      [](const BenchmarkCell& c) { return !c.error.empty(); });
  if (all_failed) throw Error::algorithm("every benchmark cell failed; see report.json");
  std::size_t failed = 0;
  for (const auto& c : report.cells)
    if (!c.error.empty()) ++failed;
  if (failed > 0)
    std::fprintf(stderr, "warning: %zu of %zu cells failed; details in report.json\n", failed,
                 report.cells.size());
  return 0;
}

int cmd_report(const std::string& report_path, const std::string& out_dir) {
  BenchmarkReport report = report_from_string(read_file(report_path));
  summarize_report(report);  // tables are always re-derived from raw predictions
  write_benchmark_outputs(report, out_dir);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"counterfactual augmentation and SMOTE-family oversampling toolkit"};
  app.require_subcommand(1);

  InspectArgs inspect_args;
  auto* inspect = app.add_subcommand("inspect", "dataset summary and CF-Set diagnostics");
  inspect->add_option("--data", inspect_args.data_path, "dataset CSV path")->required();
  inspect->add_option("--label-column", inspect_args.label_column, "label column name (default: last column)");
  inspect->add_option("--pos-class", inspect_args.pos_class, "positive (minority) class; with --neg-class: one-vs-one, alone: one-vs-rest, absent: auto for binary data");
  inspect->add_option("--neg-class", inspect_args.neg_class, "negative class for one-vs-one");
  inspect->add_option("--header", inspect_args.header, "header row: auto|yes|no (default auto)");
  inspect->add_option("--tolerance", inspect_args.tolerance, "tolerance factor for CF-Set mining (default 0.1)");
  inspect->add_option("--max-diffs", inspect_args.max_diffs, "max difference-features per pair (default 2)");

  ConfigArgs resample_args;
  auto* resample = app.add_subcommand("resample", "run one oversampler, write augmented CSV + diagnostics");
  resample->add_option("--config", resample_args.config_path, "run configuration JSON")->required();
  resample->add_option("--seed", resample_args.seed, "override the config seed");
  resample->add_option("--out", resample_args.out_dir, "output directory (default from config)");
  resample->add_option("--tolerance", resample_args.tolerance, "override CFA tolerance factor");
  resample->add_option("--max-diffs", resample_args.max_diffs, "override CFA max difference-features");
  resample->add_flag("--verify", resample_args.verify, "CFA label verification (off by default)");

  ConfigArgs benchmark_args;
  auto* benchmark = app.add_subcommand("benchmark", "full sweep: report JSON, AUC tables, ROC CSVs");
  benchmark->add_option("--config", benchmark_args.config_path, "run configuration JSON")->required();
  benchmark->add_option("--seed", benchmark_args.seed, "override the config seed");
  benchmark->add_option("--jobs", benchmark_args.jobs, "worker threads over benchmark cells (default 1)");
  benchmark->add_option("--out", benchmark_args.out_dir, "output directory (default from config)");
  benchmark->add_option("--tolerance", benchmark_args.tolerance, "override CFA tolerance factor");
  benchmark->add_option("--max-diffs", benchmark_args.max_diffs, "override CFA max difference-features");
  benchmark->add_flag("--verify", benchmark_args.verify, "CFA label verification (off by default)");

  std::string report_path, report_out = "out";
  auto* report = app.add_subcommand("report", "re-render tables from a cached report JSON");
  report->add_option("--report", report_path, "existing report.json")->required();
  report->add_option("--out", report_out, "output directory (default 'out')");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // unknown flags and bad arguments are validation failures
  }

  try {
    if (inspect->parsed()) return cmd_inspect(inspect_args);
    if (resample->parsed()) return cmd_resample(resample_args);
    if (benchmark->parsed()) return cmd_benchmark(benchmark_args);
    if (report->parsed()) return cmd_report(report_path, report_out);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
  return 0;
}
