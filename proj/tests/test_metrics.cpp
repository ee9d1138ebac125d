#include <doctest.h>

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "fresco/metrics.hpp"
#include "fresco/rng.hpp"
#include "support/oracles.hpp"

using namespace fresco;
using namespace fresco::metrics;

namespace {
const std::vector<int> kTruth{1, 1, 2, 2, 3, 3};
const std::vector<int> kPred{1, 2, 2, 2, 3, 1};
}  // namespace

TEST_CASE("confusion counts") {
  SUBCASE("six-sample tally") {
    const auto c = confusion_counts(kTruth, kPred, 3);
    CHECK(c.total == 6);
    CHECK(c.style(1) == StyleCounts{1, 1, 1, 3});
    CHECK(c.style(2) == StyleCounts{2, 1, 0, 3});
    CHECK(c.style(3) == StyleCounts{1, 0, 1, 4});
    CHECK(c.correct() == 4);
  }
  SUBCASE("all correct") {
    const std::vector<int> t{1, 2, 3, 4, 4, 2};
    const auto c = confusion_counts(t, t, 5);
    for (const auto& s : c.per_style) {
      CHECK(s.fp == 0);
      CHECK(s.fn == 0);
    }
  }
  SUBCASE("single wrong sample") {
    const std::vector<int> t{2}, p{3};
    const auto c = confusion_counts(t, p, 3);
    CHECK(c.style(2).fn == 1);
    CHECK(c.style(3).fp == 1);
  }
  SUBCASE("errors") {
    const std::vector<int> a{1, 2}, b{1}, bad{1, 4}, none{};
    CHECK_THROWS(confusion_counts(a, b, 3));
    CHECK_THROWS(confusion_counts(a, bad, 3));
    CHECK_THROWS(confusion_counts(none, none, 3));
    CHECK_THROWS(confusion_counts(a, a, 0));
  }
}

TEST_CASE("per-style and overall accuracy") {
  const auto c = confusion_counts(kTruth, kPred, 3);
  CHECK(accuracy_per_style(c, 2) == doctest::Approx(5.0 / 6.0));
  CHECK(overall_accuracy(c) == doctest::Approx(4.0 / 6.0));

  const std::vector<int> t{2, 3, 2}, p{1, 1, 1};
  CHECK(accuracy_per_style(confusion_counts(t, p, 3), 1) == 0.0);

  Rng rng(99);
  std::vector<int> truth(100000), pred(100000);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    truth[i] = static_cast<int>(rng.below(4)) + 1;
    pred[i] = static_cast<int>(rng.below(4)) + 1;
  }
  CHECK(overall_accuracy(confusion_counts(truth, pred, 4)) == doctest::Approx(0.25).epsilon(0.04));
}

TEST_CASE("macro precision and recall") {
  const auto c = confusion_counts(kTruth, kPred, 3);
  CHECK(macro_precision(c) == doctest::Approx((0.5 + 2.0 / 3.0 + 1.0) / 3.0).epsilon(1e-12));
  CHECK(macro_recall(c) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  const std::vector<int> t{1, 2, 3}, p{1, 2, 2};
  const auto never3 = confusion_counts(t, p, 3);
  CHECK(precision_of(never3, 3) == 0.0);
  CHECK(recall_of(never3, 3) == 0.0);

  const auto perfect = confusion_counts(t, t, 3);
  CHECK(macro_precision(perfect) == 1.0);
  CHECK(macro_recall(perfect) == 1.0);
}

TEST_CASE("F1 and its inversion") {
  CHECK(f1_from_pr(0.4, 0.4) == doctest::Approx(0.4));
  CHECK(f1_from_pr(0.0, 0.8) == 0.0);
  CHECK(f1_from_pr(0.0, 0.0) == 0.0);
  CHECK(f1_from_pr(13.0 / 18.0, 2.0 / 3.0) == doctest::Approx(0.6933).epsilon(1e-4));

  CHECK(recall_from_precision_f1(0.29, 0.27) == doctest::Approx(0.2526).epsilon(1e-3));
  CHECK(recall_from_precision_f1(0.6, 0.6) == doctest::Approx(0.6));
  CHECK_THROWS_WITH(recall_from_precision_f1(0.2, 0.4), doctest::Contains("inconsistent precision/F1 pair"));
  CHECK_THROWS(recall_from_precision_f1(0.3, 0.0));

  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const double p = rng.uniform(0.01, 1.0), r = rng.uniform(0.01, 1.0);
    CHECK(std::abs(recall_from_precision_f1(p, f1_from_pr(p, r)) - r) <= 1e-12);
  }
}

TEST_CASE("report") {
  SUBCASE("six-sample fixture") {
    const auto r = metrics_report(kTruth, kPred, 3);
    CHECK(r.overall_accuracy == doctest::Approx(0.6667).epsilon(1e-4));
    CHECK(r.macro_precision == doctest::Approx(0.7222).epsilon(1e-4));
    CHECK(r.macro_recall == doctest::Approx(0.6667).epsilon(1e-4));
    CHECK(r.f1 == doctest::Approx(0.6933).epsilon(1e-4));
    const std::string table = format_report_table(r);
    CHECK(table.find("Accuracy") != std::string::npos);
    CHECK(table.find("0.667") != std::string::npos);
    CHECK(table.find("0.722") != std::string::npos);
    CHECK(table.find("0.693") != std::string::npos);
    const auto j = nlohmann::json::parse(report_to_json(r));
    CHECK(j.at("f1").get<double>() == doctest::Approx(r.f1));
  }
  SUBCASE("all correct") {
    const auto r = metrics_report(kTruth, kTruth, 3);
    CHECK(r.overall_accuracy == 1.0);
    CHECK(r.f1 == 1.0);
  }
  SUBCASE("K=11 random against the matrix oracle") {
    Rng rng(11);
    std::vector<int> t(500), p(500);
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = static_cast<int>(rng.below(11)) + 1;
      p[i] = static_cast<int>(rng.below(11)) + 1;
    }
    const auto r = metrics_report(t, p, 11);
    const auto o = oracle::metrics(t, p, 11);
    CHECK(std::abs(r.f1 - o.f1) <= 1e-12);
    CHECK(std::abs(r.macro_precision - o.macro_p) <= 1e-12);
  }
}

TEST_CASE("report invariances") {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const int K = 2 + static_cast<int>(rng.below(10));
    std::vector<int> t(60), p(60);
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(K))) + 1;
      p[i] = rng.uniform01() < 0.5 ? t[i] : static_cast<int>(rng.below(static_cast<std::uint64_t>(K))) + 1;
    }
    const auto base = metrics_report(t, p, K);
    CHECK(base.f1 >= std::min(base.macro_precision, base.macro_recall) - 1e-15);
    CHECK(base.f1 <= std::max(base.macro_precision, base.macro_recall) + 1e-15);

    // Joint shuffle.
    std::vector<std::size_t> order(t.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    std::vector<int> ts, ps;
    for (auto i : order) {
      ts.push_back(t[i]);
      ps.push_back(p[i]);
    }
    const auto shuffled = metrics_report(ts, ps, K);
    CHECK(shuffled.precision == base.precision);
    CHECK(shuffled.recall == base.recall);
    CHECK(shuffled.f1 == base.f1);

    // Relabel classes.
    std::vector<int> perm(static_cast<std::size_t>(K));
    std::iota(perm.begin(), perm.end(), 1);
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    std::vector<int> tr, pr;
    for (std::size_t i = 0; i < t.size(); ++i) {
      tr.push_back(perm[static_cast<std::size_t>(t[i] - 1)]);
      pr.push_back(perm[static_cast<std::size_t>(p[i] - 1)]);
    }
    const auto relabeled = metrics_report(tr, pr, K);
    for (int k = 1; k <= K; ++k) {
      const auto nk = static_cast<std::size_t>(perm[static_cast<std::size_t>(k - 1)] - 1);
      CHECK(relabeled.precision[nk] == base.precision[static_cast<std::size_t>(k - 1)]);
      CHECK(relabeled.recall[nk] == base.recall[static_cast<std::size_t>(k - 1)]);
    }
    CHECK(relabeled.macro_precision == doctest::Approx(base.macro_precision).epsilon(1e-12));
    CHECK(relabeled.macro_recall == doctest::Approx(base.macro_recall).epsilon(1e-12));
  }
}
