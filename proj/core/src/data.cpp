#include "hhomlp/data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

#include "hhomlp/text.hpp"

namespace hhomlp::data {

namespace {

constexpr const char* kKddFeatures[] = {
    "duration",
    "protocol_type",
    "service",
    "flag",
    "src_bytes",
    "dst_bytes",
    "land",
    "wrong_fragment",
    "urgent",
    "hot",
    "num_failed_logins",
    "logged_in",
    "num_compromised",
    "root_shell",
    "su_attempted",
    "num_root",
    "num_file_creations",
    "num_shells",
    "num_access_files",
    "num_outbound_cmds",
    "is_host_login",
    "is_guest_login",
    "count",
    "srv_count",
    "serror_rate",
    "srv_serror_rate",
    "rerror_rate",
    "srv_rerror_rate",
    "same_srv_rate",
    "diff_srv_rate",
    "srv_diff_host_rate",
    "dst_host_count",
    "dst_host_srv_count",
    "dst_host_same_srv_rate",
    "dst_host_diff_srv_rate",
    "dst_host_same_src_port_rate",
    "dst_host_srv_diff_host_rate",
    "dst_host_serror_rate",
    "dst_host_srv_serror_rate",
    "dst_host_rerror_rate",
    "dst_host_srv_rerror_rate",
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

ColumnType parse_column_type(std::string_view s, std::size_t line) {
  const std::string t = lower(s);
  if (t == "numeric") return ColumnType::kNumeric;
  if (t == "categorical") return ColumnType::kCategorical;
  if (t == "label") return ColumnType::kLabel;
  throw DataError("schema line " + std::to_string(line) +
                  ": unknown column type '" + std::string(s) + "'");
}

std::string_view column_type_name(ColumnType t) {
  switch (t) {
    case ColumnType::kNumeric:
      return "numeric";
    case ColumnType::kCategorical:
      return "categorical";
    case ColumnType::kLabel:
      return "label";
  }
  return "numeric";
}

}  // namespace

Schema::Schema(std::vector<Column> columns) : columns_(std::move(columns)) {
  std::size_t labels = 0;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (!seen.insert(columns_[i].name).second)
      throw DataError("schema: duplicate column '" + columns_[i].name + "'");
    if (columns_[i].type == ColumnType::kLabel) {
      label_index_ = i;
      ++labels;
    }
  }
  if (labels != 1)
    throw DataError("schema: expected exactly one label column, found " +
                    std::to_string(labels));
  if (columns_.size() < 2)
    throw DataError("schema: need at least one feature column");
}

Schema Schema::parse(std::string_view text) {
  std::vector<Column> columns;
  std::size_t line_no = 0;
  for (const std::string& raw : text::split(text, '\n')) {
    ++line_no;
    std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto parts = text::split_ws(line);
    if (parts.size() != 2)
      throw DataError("schema line " + std::to_string(line_no) +
                      ": expected '<name> <type>'");
    columns.push_back({parts[0], parse_column_type(parts[1], line_no)});
  }
  return Schema(std::move(columns));
}

Schema Schema::load(const std::string& path) {
  return parse(text::read_file(path));
}

Schema Schema::kdd() {
  std::vector<Column> columns;
  for (const char* name : kKddFeatures) {
    const std::string n(name);
    const bool categorical =
        n == "protocol_type" || n == "service" || n == "flag";
    columns.push_back(
        {n, categorical ? ColumnType::kCategorical : ColumnType::kNumeric});
  }
  columns.push_back({"label", ColumnType::kLabel});
  return Schema(std::move(columns));
}

std::string Schema::to_text() const {
  std::string out;
  for (const Column& c : columns_)
    out += c.name + " " + std::string(column_type_name(c.type)) + "\n";
  return out;
}

std::vector<Column> Schema::feature_columns() const {
  std::vector<Column> out;
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (i != label_index_) out.push_back(columns_[i]);
  return out;
}

std::vector<RawRecord> parse_csv(std::string_view text, const Schema& schema,
                                 const CsvOptions& options,
                                 std::string_view source) {
  std::vector<RawRecord> records;
  const auto columns = schema.columns();
  std::size_t line_no = 0;
  bool header_pending = options.has_header;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    auto cells = text::split(line, options.separator);
    const std::string where =
        std::string(source) + ":" + std::to_string(line_no);
    if (cells.size() != schema.arity())
      throw DataError(where + ": expected " + std::to_string(schema.arity()) +
                      " columns, found " + std::to_string(cells.size()));
    RawRecord rec;
    rec.line = line_no;
    rec.features.reserve(cells.size() - 1);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::string cell(text::trim(cells[c]));
      if (columns[c].type == ColumnType::kLabel) {
        // KDD files terminate labels with a period ("normal.").
        if (!cell.empty() && cell.back() == '.') cell.pop_back();
        rec.label = std::move(cell);
        continue;
      }
      if (columns[c].type == ColumnType::kNumeric)
        text::parse_double(cell, where + " column '" + columns[c].name + "'");
      rec.features.push_back(std::move(cell));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<RawRecord> load_csv(const std::string& path, const Schema& schema,
                                const CsvOptions& options) {
  return parse_csv(text::read_file(path), schema, options, path);
}

std::optional<std::string> attack_family(std::string_view label) {
  static const std::map<std::string, std::string> kFamilies = [] {
    std::map<std::string, std::string> m;
    for (const char* a : {"back", "land", "neptune", "pod", "smurf",
                          "teardrop", "apache2", "mailbomb", "processtable",
                          "udpstorm"})
      m[a] = "dos";
    for (const char* a :
         {"ipsweep", "nmap", "portsweep", "satan", "mscan", "saint"})
      m[a] = "probe";
    for (const char* a :
         {"ftp_write", "guess_passwd", "imap", "multihop", "phf", "spy",
          "warezclient", "warezmaster", "sendmail", "named", "snmpgetattack",
          "snmpguess", "xlock", "xsnoop", "worm"})
      m[a] = "r2l";
    for (const char* a : {"buffer_overflow", "loadmodule", "perl", "rootkit",
                          "httptunnel", "ps", "sqlattack", "xterm"})
      m[a] = "u2r";
    // UNSW-NB15 attack categories.
    for (const char* a :
         {"dos", "shellcode", "worms", "fuzzers", "backdoor", "backdoors",
          "exploits", "analysis", "generic", "reconnaissance"})
      m[a] = a;
    m["1"] = "attack";
    return m;
  }();
  const std::string key = lower(text::trim(label));
  if (key == "normal" || key == "0") return std::nullopt;
  const auto it = kFamilies.find(key);
  if (it == kFamilies.end())
    throw DataError("unknown traffic label '" + std::string(label) + "'");
  return it->second;
}

std::vector<std::uint8_t> binarize_labels(std::span<const RawRecord> records) {
  std::vector<std::uint8_t> labels;
  labels.reserve(records.size());
  std::set<std::string> unknown;
  for (const RawRecord& r : records) {
    try {
      labels.push_back(attack_family(r.label) ? 1 : 0);
    } catch (const DataError&) {
      unknown.insert(r.label);
    }
  }
  if (!unknown.empty()) {
    std::string msg = "unknown traffic labels:";
    for (const auto& u : unknown) msg += " '" + u + "'";
    throw DataError(msg);
  }
  return labels;
}

std::string_view to_string(Partition p) {
  switch (p) {
    case Partition::kUnsplit:
      return "unsplit";
    case Partition::kTrain:
      return "train";
    case Partition::kTest:
      return "test";
  }
  return "unsplit";
}

Partition parse_partition(std::string_view s) {
  if (s == "unsplit") return Partition::kUnsplit;
  if (s == "train") return Partition::kTrain;
  if (s == "test") return Partition::kTest;
  throw DataError("unknown partition '" + std::string(s) + "'");
}

CategoricalEncoder CategoricalEncoder::fit(std::span<const RawRecord> records,
                                           const Schema& schema,
                                           CategoricalPolicy policy,
                                           Partition fitted_on) {
  if (fitted_on == Partition::kTest)
    throw DataError("categorical coding must not be fitted on test rows");
  CategoricalEncoder enc;
  enc.policy_ = policy;
  enc.fitted_on_ = fitted_on;
  enc.columns_ = schema.feature_columns();
  enc.categories_.resize(enc.columns_.size());
  enc.lookup_.resize(enc.columns_.size());
  for (const RawRecord& r : records) {
    for (std::size_t c = 0; c < enc.columns_.size(); ++c) {
      if (enc.columns_[c].type != ColumnType::kCategorical) continue;
      auto& lookup = enc.lookup_[c];
      if (lookup.emplace(r.features[c], enc.categories_[c].size()).second)
        enc.categories_[c].push_back(r.features[c]);
    }
  }
  return enc;
}

std::vector<std::string> CategoricalEncoder::feature_names() const {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (columns_[c].type == ColumnType::kCategorical &&
        policy_ == CategoricalPolicy::kOneHot) {
      for (const auto& cat : categories_[c])
        names.push_back(columns_[c].name + "=" + cat);
    } else {
      names.push_back(columns_[c].name);
    }
  }
  return names;
}

std::size_t CategoricalEncoder::width() const { return feature_names().size(); }

std::size_t CategoricalEncoder::code(std::size_t column,
                                     const std::string& value) const {
  const auto& lookup = lookup_.at(column);
  const auto it = lookup.find(value);
  return it == lookup.end() ? 0 : it->second;
}

RealVector CategoricalEncoder::encode(std::span<const RawRecord> records) const {
  const std::size_t w = width();
  RealVector out;
  out.reserve(records.size() * w);
  for (const RawRecord& r : records) {
    if (r.features.size() != columns_.size())
      throw DataError("encode: record at line " + std::to_string(r.line) +
                      " has the wrong arity");
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      const std::string& cell = r.features[c];
      if (columns_[c].type != ColumnType::kCategorical) {
        out.push_back(text::parse_double(cell, columns_[c].name));
      } else if (policy_ == CategoricalPolicy::kOrdinal) {
        out.push_back(static_cast<double>(code(c, cell)));
      } else {
        const auto& lookup = lookup_[c];
        const auto it = lookup.find(cell);
        for (std::size_t k = 0; k < categories_[c].size(); ++k)
          out.push_back(it != lookup.end() && it->second == k ? 1.0 : 0.0);
      }
    }
  }
  return out;
}

EncodedTable encode_categoricals(std::span<const RawRecord> records,
                                 const Schema& schema,
                                 CategoricalPolicy policy) {
  const auto enc = CategoricalEncoder::fit(records, schema, policy);
  return {enc.encode(records), enc.width(), enc.feature_names()};
}

std::string NormStats::digest() const {
  std::string s = "range " + text::format_double(na) + " " +
                  text::format_double(nb) + "\nmin " + text::join_doubles(min) +
                  "\nmax " + text::join_doubles(max) + "\n";
  return text::sha256_hex(s);
}

void Dataset::validate() const {
  if (values.size() != rows * cols)
    throw DataError("dataset: value count does not match rows x cols");
  if (labels.size() != rows)
    throw DataError("dataset: label count does not match row count");
  if (feature_names.size() != cols)
    throw DataError("dataset: feature name count does not match cols");
  for (std::uint8_t l : labels)
    if (l > 1) throw DataError("dataset: labels must be 0 or 1");
  if (norm && (norm->min.size() != cols || norm->max.size() != cols))
    throw DataError("dataset: normalization stats width mismatch");
}

Dataset make_dataset(RealVector values, std::size_t cols,
                     std::vector<std::uint8_t> labels,
                     std::vector<std::string> feature_names) {
  Dataset d;
  d.cols = cols;
  d.rows = labels.size();
  d.values = std::move(values);
  d.labels = std::move(labels);
  if (feature_names.empty()) {
    for (std::size_t c = 0; c < cols; ++c)
      feature_names.push_back("f" + std::to_string(c));
  }
  d.feature_names = std::move(feature_names);
  d.validate();
  return d;
}

NormStats fit_norm_stats(const Dataset& dataset, double na, double nb) {
  if (dataset.partition == Partition::kTest)
    throw DataError("normalization statistics must not be fitted on test rows");
  if (!(na < nb)) throw UsageError("normalization range needs na < nb");
  if (dataset.rows == 0) throw DataError("cannot fit statistics on 0 rows");
  NormStats s;
  s.na = na;
  s.nb = nb;
  s.fitted_on = dataset.partition;
  s.min.assign(dataset.cols, 0.0);
  s.max.assign(dataset.cols, 0.0);
  for (std::size_t c = 0; c < dataset.cols; ++c) {
    double lo = dataset.values[c];
    double hi = lo;
    for (std::size_t r = 1; r < dataset.rows; ++r) {
      const double v = dataset.values[r * dataset.cols + c];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    s.min[c] = lo;
    s.max[c] = hi;
  }
  return s;
}

double normalize_value(double value, double min, double max, double na,
                       double nb) {
  if (!(max > min)) return na;
  const double scaled = (value - min) / (max - min) * (nb - na) + na;
  return std::clamp(scaled, na, nb);
}

Dataset normalize(const Dataset& dataset, const NormStats& stats) {
  if (stats.min.size() != dataset.cols)
    throw DataError("normalize: statistics cover " +
                    std::to_string(stats.min.size()) + " features, dataset has " +
                    std::to_string(dataset.cols));
  // Already scaled with these statistics: nothing to do.
  if (dataset.norm && *dataset.norm == stats) return dataset;
  Dataset out = dataset;
  for (std::size_t r = 0; r < dataset.rows; ++r)
    for (std::size_t c = 0; c < dataset.cols; ++c) {
      double& v = out.values[r * dataset.cols + c];
      v = normalize_value(v, stats.min[c], stats.max[c], stats.na, stats.nb);
    }
  out.norm = stats;
  return out;
}

Dataset denormalize(const Dataset& dataset) {
  if (!dataset.norm) throw DataError("denormalize: dataset is not normalized");
  const NormStats& s = *dataset.norm;
  Dataset out = dataset;
  for (std::size_t r = 0; r < dataset.rows; ++r)
    for (std::size_t c = 0; c < dataset.cols; ++c) {
      double& v = out.values[r * dataset.cols + c];
      if (!(s.max[c] > s.min[c])) {
        v = s.min[c];
        continue;
      }
      v = (v - s.na) / (s.nb - s.na) * (s.max[c] - s.min[c]) + s.min[c];
    }
  out.norm.reset();
  return out;
}

bool is_normalized(const Dataset& dataset, double tolerance) {
  if (!dataset.norm) return false;
  const double lo = dataset.norm->na - tolerance;
  const double hi = dataset.norm->nb + tolerance;
  return std::all_of(dataset.values.begin(), dataset.values.end(),
                     [&](double v) { return v >= lo && v <= hi; });
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::span<const std::uint8_t> labels, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
    throw UsageError("split: train fraction must lie in (0, 1)");
  const std::size_t n = labels.size();
  if (n < 2) throw DataError("split: need at least 2 rows");

  Rng rng(spec.seed);
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  auto take = [&](std::vector<std::size_t> idx) {
    std::shuffle(idx.begin(), idx.end(), rng.engine());
    const auto k = static_cast<std::size_t>(
        std::llround(spec.train_fraction * static_cast<double>(idx.size())));
    train.insert(train.end(), idx.begin(), idx.begin() + k);
    test.insert(test.end(), idx.begin() + k, idx.end());
  };
  if (spec.stratified) {
    std::vector<std::size_t> neg;
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i) (labels[i] ? pos : neg).push_back(i);
    take(std::move(neg));
    take(std::move(pos));
  } else {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    take(std::move(all));
  }
  // Both partitions non-empty.
  if (train.empty()) {
    train.push_back(test.back());
    test.pop_back();
  } else if (test.empty()) {
    test.push_back(train.back());
    train.pop_back();
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

Dataset take_rows(const Dataset& dataset, std::span<const std::size_t> rows) {
  Dataset out;
  out.cols = dataset.cols;
  out.rows = rows.size();
  out.feature_names = dataset.feature_names;
  out.norm = dataset.norm;
  out.partition = dataset.partition;
  out.values.reserve(rows.size() * dataset.cols);
  out.labels.reserve(rows.size());
  for (std::size_t r : rows) {
    if (r >= dataset.rows) throw UsageError("take_rows: row out of range");
    const auto src = dataset.row(r);
    out.values.insert(out.values.end(), src.begin(), src.end());
    out.labels.push_back(dataset.labels[r]);
  }
  return out;
}

std::pair<Dataset, Dataset> split(const Dataset& dataset,
                                  const SplitSpec& spec) {
  const auto [train_idx, test_idx] = split_indices(dataset.labels, spec);
  Dataset train = take_rows(dataset, train_idx);
  Dataset test = take_rows(dataset, test_idx);
  train.partition = Partition::kTrain;
  test.partition = Partition::kTest;
  return {std::move(train), std::move(test)};
}

Dataset select_columns(const Dataset& dataset,
                       std::span<const std::uint8_t> mask) {
  if (mask.size() != dataset.cols)
    throw DataError("feature mask has " + std::to_string(mask.size()) +
                    " bits, dataset has " + std::to_string(dataset.cols) +
                    " features");
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < mask.size(); ++c)
    if (mask[c]) keep.push_back(c);
  if (keep.empty()) throw DataError("feature mask selects no features");

  Dataset out;
  out.rows = dataset.rows;
  out.cols = keep.size();
  out.labels = dataset.labels;
  out.partition = dataset.partition;
  out.values.reserve(out.rows * out.cols);
  for (std::size_t r = 0; r < dataset.rows; ++r)
    for (std::size_t c : keep) out.values.push_back(dataset.values[r * dataset.cols + c]);
  for (std::size_t c : keep) out.feature_names.push_back(dataset.feature_names[c]);
  if (dataset.norm) {
    NormStats s = *dataset.norm;
    s.min.clear();
    s.max.clear();
    for (std::size_t c : keep) {
      s.min.push_back(dataset.norm->min[c]);
      s.max.push_back(dataset.norm->max[c]);
    }
    out.norm = std::move(s);
  }
  return out;
}

}  // namespace hhomlp::data
