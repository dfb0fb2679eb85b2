#pragma once

// Binary intrusion-detection measures over a confusion matrix and over raw
// detector outputs. Class 1 is "intrusion" (positive), class 0 is "normal".

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace hhomlp::metrics {

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const noexcept { return tp + tn + fp + fn; }
  bool operator==(const ConfusionCounts&) const = default;
};

ConfusionCounts tally(std::span<const int> predicted,
                      std::span<const std::uint8_t> labels);

// An empty optional is the "not applicable" marker for a zero denominator.
using Ratio = std::optional<double>;

double accuracy(const ConfusionCounts& c);
Ratio sensitivity(const ConfusionCounts& c);
Ratio specificity(const ConfusionCounts& c);

double mse(std::span<const double> predictions,
           std::span<const std::uint8_t> labels);
double rmse(std::span<const double> predictions,
            std::span<const std::uint8_t> labels);

struct MetricsReport {
  ConfusionCounts counts;
  double accuracy = 0.0;
  Ratio sensitivity;
  Ratio specificity;
  double mse = 0.0;
  double rmse = 0.0;
};

MetricsReport make_report(const ConfusionCounts& counts,
                          std::span<const double> outputs,
                          std::span<const std::uint8_t> labels);

// Column order of the flat CSV form.
inline constexpr const char* kCsvHeader =
    "accuracy,sensitivity,specificity,mse,rmse,tp,tn,fp,fn";

std::string to_csv_row(const MetricsReport& report);
std::string format_ratio(const Ratio& r);

}  // namespace hhomlp::metrics
