#include "fresco/metrics.hpp"

#include <cstdio>
#include <json.hpp>

#include "fresco/error.hpp"

namespace fresco::metrics {

std::int64_t ConfusionCounts::correct() const {
  std::int64_t sum = 0;
  for (const auto& s : per_style) sum += s.tp;
  return sum;
}

ConfusionCounts confusion_counts(std::span<const int> truth, std::span<const int> pred, int K) {
  if (K < 1) throw Error("K must be >= 1");
  if (truth.size() != pred.size()) throw Error("truth/prediction length mismatch");
  if (truth.empty()) throw Error("no samples");
  ConfusionCounts c;
  c.K = K;
  c.total = static_cast<std::int64_t>(truth.size());
  c.per_style.assign(static_cast<std::size_t>(K), {});
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int t = truth[i], p = pred[i];
    if (t < 1 || t > K || p < 1 || p > K) throw Error("label out of range [1, K]");
    if (t == p) {
      ++c.per_style[t - 1].tp;
    } else {
      ++c.per_style[t - 1].fn;
      ++c.per_style[p - 1].fp;
    }
  }
  for (auto& s : c.per_style) s.tn = c.total - s.tp - s.fp - s.fn;
  return c;
}

double accuracy_per_style(const ConfusionCounts& c, int k) {
  const auto& s = c.style(k);
  return static_cast<double>(s.tp + s.tn) / static_cast<double>(c.total);
}

double overall_accuracy(const ConfusionCounts& c) {
  return static_cast<double>(c.correct()) / static_cast<double>(c.total);
}

double precision_of(const ConfusionCounts& c, int k) {
  const auto& s = c.style(k);
  return s.tp + s.fp == 0 ? 0.0 : static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fp);
}

double recall_of(const ConfusionCounts& c, int k) {
  const auto& s = c.style(k);
  return s.tp + s.fn == 0 ? 0.0 : static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fn);
}

double macro_precision(const ConfusionCounts& c) {
  double sum = 0.0;
  for (int k = 1; k <= c.K; ++k) sum += precision_of(c, k);
  return sum / c.K;
}

double macro_recall(const ConfusionCounts& c) {
  double sum = 0.0;
  for (int k = 1; k <= c.K; ++k) sum += recall_of(c, k);
  return sum / c.K;
}

double f1_from_pr(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

double recall_from_precision_f1(double p, double f1) {
  if (!(f1 > 0.0) || !(f1 < 2.0 * p)) throw Error("inconsistent precision/F1 pair");
  return f1 * p / (2.0 * p - f1);
}

MetricsReport metrics_report(std::span<const int> truth, std::span<const int> pred, int K) {
  const ConfusionCounts c = confusion_counts(truth, pred, K);
  MetricsReport r;
  r.K = K;
  r.total = c.total;
  for (int k = 1; k <= K; ++k) {
    r.accuracy.push_back(accuracy_per_style(c, k));
    r.precision.push_back(precision_of(c, k));
    r.recall.push_back(recall_of(c, k));
  }
  r.overall_accuracy = overall_accuracy(c);
  r.macro_precision = macro_precision(c);
  r.macro_recall = macro_recall(c);
  r.f1 = f1_from_pr(r.macro_precision, r.macro_recall);
  return r;
}

std::string format_report_table(const MetricsReport& r) {
  std::string out;
  char line[96];
  std::snprintf(line, sizeof line, "%-10s %8s\n", "Metric", "Value");
  out += line;
  const std::pair<const char*, double> rows[] = {
      {"Accuracy", r.overall_accuracy}, {"Precision", r.macro_precision}, {"Recall", r.macro_recall}, {"F1", r.f1}};
  for (const auto& [name, value] : rows) {
    std::snprintf(line, sizeof line, "%-10s %8.3f\n", name, value);
    out += line;
  }
  std::snprintf(line, sizeof line, "(K=%d, n=%lld)\n", r.K, static_cast<long long>(r.total));
  out += line;
  return out;
}

std::string report_to_json(const MetricsReport& r, int indent) {
  nlohmann::ordered_json j;
  j["K"] = r.K;
  j["total"] = r.total;
  j["accuracy"] = r.overall_accuracy;
  j["precision"] = r.macro_precision;
  j["recall"] = r.macro_recall;
  j["f1"] = r.f1;
  nlohmann::ordered_json per = nlohmann::ordered_json::array();
  for (int k = 1; k <= r.K; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    per.push_back({{"style_k", k}, {"accuracy", r.accuracy[i]}, {"precision", r.precision[i]}, {"recall", r.recall[i]}});
  }
  j["per_style"] = per;
  return j.dump(indent);
}

}  // namespace fresco::metrics
