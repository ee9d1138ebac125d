#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fresco::metrics {

/// One-vs-rest tallies for a single style.
struct StyleCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;
  friend bool operator==(const StyleCounts&, const StyleCounts&) = default;
};

struct ConfusionCounts {
  int K = 0;
  std::int64_t total = 0;
  std::vector<StyleCounts> per_style;  // index k-1

  const StyleCounts& style(int k) const { return per_style.at(static_cast<std::size_t>(k - 1)); }
  std::int64_t correct() const;
};

/// Labels are 1-based style indices in [1, K]. Throws on length mismatch,
/// empty input or out-of-range labels.
ConfusionCounts confusion_counts(std::span<const int> truth, std::span<const int> pred, int K);

/// (TP + TN) / total for style k.
double accuracy_per_style(const ConfusionCounts& c, int k);
/// Fraction of correct predictions.
double overall_accuracy(const ConfusionCounts& c);

// A class whose denominator is empty contributes 0 to the macro mean.
double precision_of(const ConfusionCounts& c, int k);
double recall_of(const ConfusionCounts& c, int k);
double macro_precision(const ConfusionCounts& c);
double macro_recall(const ConfusionCounts& c);

/// Harmonic mean; 0 when p + r == 0.
double f1_from_pr(double p, double r);

/// Inverts f1_from_pr for the recall: r = f1 p / (2p - f1). Requires
/// 0 < f1 < 2p, otherwise throws "inconsistent precision/F1 pair".
double recall_from_precision_f1(double p, double f1);

struct MetricsReport {
  int K = 0;
  std::int64_t total = 0;
  std::vector<double> accuracy;  // per style, index k-1
  std::vector<double> precision;
  std::vector<double> recall;
  double overall_accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double f1 = 0.0;  // harmonic mean of the macro precision and recall
};

MetricsReport metrics_report(std::span<const int> truth, std::span<const int> pred, int K);

/// Four-row Accuracy / Precision / Recall / F1 table, 3 decimals.
std::string format_report_table(const MetricsReport& report);
std::string report_to_json(const MetricsReport& report, int indent = 2);

}  // namespace fresco::metrics
