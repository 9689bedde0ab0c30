#include "cfaug/resample.hpp"

#include <cstdio>
#include <memory>
#include <numeric>

#include "cfaug/cf_engine.hpp"
#include "cfaug/classifiers.hpp"
#include "cfaug/error.hpp"
#include "cfaug/random.hpp"
#include "cfaug/smote_family.hpp"

namespace cfaug {

std::string method_tag(Method m) {
  switch (m) {
    case Method::baseline: return "baseline";
    case Method::smote: return "smote";
    case Method::bsmote: return "bsmote";
    case Method::adasyn: return "adasyn";
    case Method::slsmote: return "slsmote";
    case Method::cfa: return "cfa";
  }
  throw Error::validation("unknown method");
}

std::string method_display_name(Method m) {
  switch (m) {
    case Method::baseline: return "Baseline";
    case Method::smote: return "SMOTE";
    case Method::bsmote: return "B-SMOTE";
    case Method::adasyn: return "ADASYN";
    case Method::slsmote: return "SL-SMOTE";
    case Method::cfa: return "CFA";
  }
  throw Error::validation("unknown method");
}

Method method_from_tag(const std::string& tag) {
  for (Method m : kMethodOrder)
    if (method_tag(m) == tag) return m;
  throw Error::validation("unknown method tag: '" + tag + "'");
}

std::size_t method_order_index(Method m) {
  for (std::size_t i = 0; i < std::size(kMethodOrder); ++i)
    if (kMethodOrder[i] == m) return i;
  throw Error::validation("unknown method");
}

std::string provenance_string(const Provenance& p) {
  char buf[128];
  if (p.method == Method::cfa) {
    std::snprintf(buf, sizeof(buf), "cfa:x'=%zu;x=%zu;p=%zu",
                  p.base_row, p.neighbor_row, p.template_row);
  } else {
    std::snprintf(buf, sizeof(buf), "%s:p=%zu;n=%zu;d=%.6f",
                  method_tag(p.method).c_str(), p.base_row, p.neighbor_row, p.delta);
  }
  return buf;
}

std::vector<std::string> ResampleResult::provenance_column() const {
  std::vector<std::string> column(augmented.n_instances());
  for (std::size_t i = 0; i < provenance.size(); ++i)
    column[original_rows + i] = provenance_string(provenance[i]);
  return column;
}

namespace {

ResampleResult baseline_passthrough(const Dataset& ds) {
  if (!ds.is_binary()) throw Error::validation("oversample needs a binarized dataset");
  ResampleResult out;
  std::vector<std::size_t> all(ds.n_instances());
  std::iota(all.begin(), all.end(), std::size_t{0});
  out.augmented = ds.subset(all);
  out.original_rows = ds.n_instances();
  out.diagnostics.target_minority = ds.n_positive();
  out.diagnostics.achieved_minority = ds.n_positive();
  return out;
}

}  // namespace

ResampleResult oversample(const Dataset& ds, const ResamplePlan& plan) {
  switch (plan.method) {
    case Method::baseline:
      return baseline_passthrough(ds);
    case Method::smote:
      return smote(ds, plan);
    case Method::bsmote:
      return borderline_smote(ds, plan);
    case Method::adasyn:
      return adasyn(ds, plan);
    case Method::slsmote:
      return safe_level_smote(ds, plan);
    case Method::cfa: {
      CfaOptions options;
      options.tolerance_factor = plan.tolerance_factor;
      options.max_diffs = plan.max_diffs;
      options.target_count = plan.target_count;
      options.seed = plan.seed;
      if (plan.verify) {
        // verification model: a default k-NN trained on the input split
        ClassifierSpec spec;
        spec.kind = ClassifierKind::knn;
        spec.n_neighbors = 5;
        spec.seed = derive_seed(plan.seed, "cfa-verify");
        auto model = std::make_shared<TrainedModel>(train(spec, ds));
        options.verify = [model](std::span<const double> x) {
          return model->predict(x) == Label::positive;
        };
      }
      return cfa_oversample(ds, options);
    }
  }
  throw Error::validation("unknown resampling method");
}

}  // namespace cfaug
