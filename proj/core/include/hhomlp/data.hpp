#pragma once

// Traffic-record ingestion: schema-driven CSV loading, categorical encoding,
// label binarization, min-max normalization and seeded train/test splits.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hhomlp/common.hpp"

namespace hhomlp::data {

enum class ColumnType { kNumeric, kCategorical, kLabel };

struct Column {
  std::string name;
  ColumnType type = ColumnType::kNumeric;
};

// Column layout of a CSV file. Exactly one label column.
//
// Text form, one column per line, blank lines and '#' comments ignored:
//   duration numeric
//   protocol_type categorical
//   ...
//   label label
class Schema {
 public:
  explicit Schema(std::vector<Column> columns);

  static Schema parse(std::string_view text);
  static Schema load(const std::string& path);
  // 41 KDD Cup 99 feature columns followed by the label column.
  static Schema kdd();

  std::string to_text() const;

  const std::vector<Column>& columns() const noexcept { return columns_; }
  std::size_t arity() const noexcept { return columns_.size(); }
  std::size_t label_index() const noexcept { return label_index_; }
  // Columns other than the label, in file order.
  std::vector<Column> feature_columns() const;

 private:
  std::vector<Column> columns_;
  std::size_t label_index_ = 0;
};

struct RawRecord {
  std::vector<std::string> features;  // label column removed
  std::string label;
  std::size_t line = 0;  // 1-based source line
};

struct CsvOptions {
  bool has_header = false;
  char separator = ',';
};

std::vector<RawRecord> parse_csv(std::string_view text, const Schema& schema,
                                 const CsvOptions& options = {},
                                 std::string_view source = "<memory>");
std::vector<RawRecord> load_csv(const std::string& path, const Schema& schema,
                                const CsvOptions& options = {});

// KDD attack family for a label ("dos", "probe", "r2l", "u2r", or an
// UNSW-NB15 category), nullopt for normal traffic. Throws DataError for
// labels outside the table.
std::optional<std::string> attack_family(std::string_view label);

// normal -> 0, any known attack -> 1. Unknown labels are reported together.
std::vector<std::uint8_t> binarize_labels(std::span<const RawRecord> records);

enum class CategoricalPolicy { kOrdinal, kOneHot };

enum class Partition { kUnsplit, kTrain, kTest };
std::string_view to_string(Partition p);
Partition parse_partition(std::string_view s);

// Category codings fitted on one partition and reused for the others.
//
// Ordinal: codes by first appearance, starting at 0; a category never seen
// during fitting encodes as 0. One-hot: one 0/1 feature per fitted category,
// an unseen category is all zeros.
class CategoricalEncoder {
 public:
  static CategoricalEncoder fit(std::span<const RawRecord> records,
                                const Schema& schema, CategoricalPolicy policy,
                                Partition fitted_on = Partition::kTrain);

  CategoricalPolicy policy() const noexcept { return policy_; }
  Partition fitted_on() const noexcept { return fitted_on_; }
  std::vector<std::string> feature_names() const;
  std::size_t width() const;

  // Ordinal code of `value` in feature column `column` (0 when unseen).
  std::size_t code(std::size_t column, const std::string& value) const;

  // Row-major numeric matrix of width().
  RealVector encode(std::span<const RawRecord> records) const;

 private:
  CategoricalPolicy policy_ = CategoricalPolicy::kOrdinal;
  Partition fitted_on_ = Partition::kTrain;
  std::vector<Column> columns_;
  // Per feature column; empty for numeric columns.
  std::vector<std::vector<std::string>> categories_;
  std::vector<std::map<std::string, std::size_t>> lookup_;
};

struct EncodedTable {
  RealVector values;
  std::size_t cols = 0;
  std::vector<std::string> feature_names;
};

// Fits the coding on `records` and encodes them in one step.
EncodedTable encode_categoricals(std::span<const RawRecord> records,
                                 const Schema& schema,
                                 CategoricalPolicy policy);

// Per-feature minimum and maximum of the fitting partition plus the target
// range [na, nb].
struct NormStats {
  RealVector min;
  RealVector max;
  double na = 0.0;
  double nb = 1.0;
  Partition fitted_on = Partition::kTrain;

  bool operator==(const NormStats&) const = default;
  std::string digest() const;
};

struct Dataset {
  std::size_t rows = 0;
  std::size_t cols = 0;
  RealVector values;  // row-major rows x cols
  std::vector<std::uint8_t> labels;
  std::vector<std::string> feature_names;
  std::optional<NormStats> norm;
  Partition partition = Partition::kUnsplit;

  std::span<const double> row(std::size_t r) const {
    return {values.data() + r * cols, cols};
  }
  void validate() const;
  bool operator==(const Dataset&) const = default;
};

Dataset make_dataset(RealVector values, std::size_t cols,
                     std::vector<std::uint8_t> labels,
                     std::vector<std::string> feature_names = {});

// Refuses test partitions: statistics are fitted on training rows only.
NormStats fit_norm_stats(const Dataset& dataset, double na = 0.0,
                         double nb = 1.0);

double normalize_value(double value, double min, double max, double na,
                       double nb);

// Min-max scaling into [na, nb]. Constant features map to na; values outside
// the fitted range are clipped.
Dataset normalize(const Dataset& dataset, const NormStats& stats);
Dataset denormalize(const Dataset& dataset);

// True when every value lies inside the dataset's normalization range.
bool is_normalized(const Dataset& dataset, double tolerance = 1e-9);

struct SplitSpec {
  double train_fraction = 0.8;
  bool stratified = true;
  std::uint64_t seed = 0;
};

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::span<const std::uint8_t> labels, const SplitSpec& spec);

Dataset take_rows(const Dataset& dataset, std::span<const std::size_t> rows);

// Both halves keep the source's normalization statistics.
std::pair<Dataset, Dataset> split(const Dataset& dataset,
                                  const SplitSpec& spec);

// Keeps only the columns whose mask bit is set.
Dataset select_columns(const Dataset& dataset,
                       std::span<const std::uint8_t> mask);

}  // namespace hhomlp::data
