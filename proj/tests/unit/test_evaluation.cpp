#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cfaug/error.hpp"
#include "cfaug/evaluation.hpp"
#include "cfaug/random.hpp"
#include "support/oracles.hpp"

using namespace cfaug;

namespace {

std::vector<Label> labels_from(const std::string& s) {
  std::vector<Label> out;
  for (char c : s) out.push_back(c == 'P' ? Label::positive : Label::negative);
  return out;
}

}  // namespace

TEST_CASE("confusion matrix cell semantics") {
  SUBCASE("perfect predictions") {
    const auto actual = labels_from("PPNN");
    const auto cm = confusion(actual, actual);
    CHECK(cm.tp == 2);
    CHECK(cm.tn == 2);
    CHECK(cm.fp == 0);
    CHECK(cm.fn == 0);
  }
  SUBCASE("inverted predictions") {
    const auto cm = confusion(labels_from("PPNN"), labels_from("NNPP"));
    CHECK(cm.tp == 0);
    CHECK(cm.tn == 0);
    CHECK(cm.fp == 2);
    CHECK(cm.fn == 2);
  }
  SUBCASE("hand count") {
    const auto cm = confusion(labels_from("PPPPNN"), labels_from("PPPNNP"));
    CHECK(cm.tp == 3);
    CHECK(cm.fn == 1);
    CHECK(cm.fp == 1);
    CHECK(cm.tn == 1);
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS_AS(confusion(labels_from("PN"), labels_from("P")), Error);
  }
}

TEST_CASE("metric arithmetic") {
  SUBCASE("worked example: TP=3 FN=1 FP=2 TN=4") {
    const auto m = metrics({3, 1, 2, 4});
    CHECK(m.recall == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(m.precision == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(m.f1 == doctest::Approx(2.0 * 0.6 * 0.75 / 1.35).epsilon(1e-12));
    CHECK(m.f1 == doctest::Approx(0.6666666666666666).epsilon(1e-9));
    CHECK(m.balanced_accuracy == doctest::Approx((0.75 + 4.0 / 6.0) / 2.0).epsilon(1e-12));
    CHECK(m.balanced_accuracy == doctest::Approx(0.7083333333333333).epsilon(1e-9));
    CHECK_FALSE(m.recall_degenerate);
    CHECK_FALSE(m.precision_degenerate);
  }
  SUBCASE("no positive predictions: precision 0 with the degenerate flag") {
    const auto m = metrics({0, 3, 0, 5});
    CHECK(m.precision == 0.0);
    CHECK(m.precision_degenerate);
    CHECK(m.f1 == 0.0);
  }
  SUBCASE("chance-level balanced accuracy") {
    const auto m = metrics({2, 2, 3, 3});
    CHECK(m.balanced_accuracy == 0.5);
  }
  SUBCASE("f1 lies between precision and recall when both are positive") {
    for (std::size_t tp = 1; tp <= 5; ++tp) {
      for (std::size_t fn = 0; fn <= 4; ++fn) {
        for (std::size_t fp = 0; fp <= 4; ++fp) {
          const auto m = metrics({tp, fn, fp, 3});
          if (m.precision > 0 && m.recall > 0) {
            CHECK(m.f1 >= std::min(m.precision, m.recall) - 1e-15);
            CHECK(m.f1 <= std::max(m.precision, m.recall) + 1e-15);
          }
        }
      }
    }
  }
}

TEST_CASE("roc curve and trapezoidal auc") {
  SUBCASE("perfect ranking gives auc 1") {
    const auto r = roc(labels_from("PPNN"), std::vector<double>{0.9, 0.8, 0.2, 0.1});
    CHECK(r.auc == 1.0);
  }
  SUBCASE("constant scores give auc 0.5 and the degenerate two-point curve") {
    const auto r = roc(labels_from("PNPN"), std::vector<double>{0.4, 0.4, 0.4, 0.4});
    CHECK(r.auc == 0.5);
    REQUIRE(r.curve.points.size() == 2);
    CHECK(r.curve.points.front().fpr == 0.0);
    CHECK(r.curve.points.front().tpr == 0.0);
    CHECK(r.curve.points.back().fpr == 1.0);
    CHECK(r.curve.points.back().tpr == 1.0);
  }
  SUBCASE("worked example matches the pairwise oracle exactly") {
    const auto actual = labels_from("PNPN");
    const std::vector<double> scores{0.9, 0.8, 0.3, 0.2};
    const auto r = roc(actual, scores);
    CHECK(r.auc == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(r.auc == doctest::Approx(test::mann_whitney_auc(actual, scores)).epsilon(1e-12));
  }
  SUBCASE("single-class input is an error") {
    CHECK_THROWS_AS(roc(labels_from("PP"), std::vector<double>{0.1, 0.2}), Error);
  }
  SUBCASE("curve starts at the origin, ends at (1,1), and never decreases") {
    Rng rng(3);
    std::uniform_real_distribution<double> score(0.0, 1.0);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> quantized(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 40);
      std::vector<Label> actual;
      std::vector<double> scores;
      for (std::size_t i = 0; i < n; ++i) {
        actual.push_back(coin(rng) == 1 ? Label::positive : Label::negative);
        // half the trials use quantized scores so ties are common
        scores.push_back(trial % 2 == 0 ? score(rng) : quantized(rng) / 4.0);
      }
      actual[0] = Label::positive;
      if (n > 1) actual[1] = Label::negative;

      const auto r = roc(actual, scores);
      CHECK(r.curve.points.front().fpr == 0.0);
      CHECK(r.curve.points.front().tpr == 0.0);
      CHECK(r.curve.points.back().fpr == 1.0);
      CHECK(r.curve.points.back().tpr == 1.0);
      for (std::size_t i = 1; i < r.curve.points.size(); ++i) {
        CHECK(r.curve.points[i].fpr >= r.curve.points[i - 1].fpr);
        CHECK(r.curve.points[i].tpr >= r.curve.points[i - 1].tpr);
        CHECK(r.curve.points[i].threshold < r.curve.points[i - 1].threshold);
      }
      CHECK(r.auc ==
            doctest::Approx(test::mann_whitney_auc(actual, scores)).epsilon(1e-12));
    }
  }
}
