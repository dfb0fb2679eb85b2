#include "hhomlp/metrics.hpp"

#include <cmath>

#include "hhomlp/common.hpp"
#include "hhomlp/text.hpp"

namespace hhomlp::metrics {

ConfusionCounts tally(std::span<const int> predicted,
                      std::span<const std::uint8_t> labels) {
  if (predicted.size() != labels.size())
    throw UsageError("tally: prediction/label length mismatch");
  ConfusionCounts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool p = predicted[i] != 0;
    const bool y = labels[i] != 0;
    if (p && y) ++c.tp;
    else if (!p && !y) ++c.tn;
    else if (p) ++c.fp;
    else ++c.fn;
  }
  return c;
}

double accuracy(const ConfusionCounts& c) {
  if (c.total() == 0) throw UsageError("accuracy: no evaluated rows");
  return static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
}

Ratio sensitivity(const ConfusionCounts& c) {
  if (c.tp + c.fn == 0) return std::nullopt;
  return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
}

Ratio specificity(const ConfusionCounts& c) {
  if (c.tn + c.fp == 0) return std::nullopt;
  return static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
}

double mse(std::span<const double> predictions,
           std::span<const std::uint8_t> labels) {
  if (predictions.empty()) throw UsageError("mse: empty input");
  if (predictions.size() != labels.size())
    throw UsageError("mse: prediction/label length mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double d = predictions[i] - static_cast<double>(labels[i]);
    total += d * d;
  }
  return total / static_cast<double>(predictions.size());
}

double rmse(std::span<const double> predictions,
            std::span<const std::uint8_t> labels) {
  return std::sqrt(mse(predictions, labels));
}

MetricsReport make_report(const ConfusionCounts& counts,
                          std::span<const double> outputs,
                          std::span<const std::uint8_t> labels) {
  MetricsReport r;
  r.counts = counts;
  r.accuracy = accuracy(counts);
  r.sensitivity = sensitivity(counts);
  r.specificity = specificity(counts);
  r.mse = mse(outputs, labels);
  r.rmse = std::sqrt(r.mse);
  return r;
}

std::string format_ratio(const Ratio& r) {
  return r ? text::format_double(*r) : std::string("NA");
}

std::string to_csv_row(const MetricsReport& report) {
  const auto& c = report.counts;
  return text::format_double(report.accuracy) + "," +
         format_ratio(report.sensitivity) + "," +
         format_ratio(report.specificity) + "," +
         text::format_double(report.mse) + "," +
         text::format_double(report.rmse) + "," + std::to_string(c.tp) + "," +
         std::to_string(c.tn) + "," + std::to_string(c.fp) + "," +
         std::to_string(c.fn);
}

}  // namespace hhomlp::metrics
