#include "hhomlp/io.hpp"

#include <nlohmann/json.hpp>

#include "hhomlp/text.hpp"

namespace hhomlp::io {

namespace {

constexpr std::string_view kDigestPrefix = "sha256 ";

using nlohmann::json;

void check_name(const std::string& name) {
  if (name.empty() ||
      name.find_first_of(" \t\r\n") != std::string::npos)
    throw DataError("feature name '" + name + "' is empty or has whitespace");
}

// Line cursor over a verified body.
class Lines {
 public:
  Lines(std::string_view body, std::string_view source)
      : body_(body), source_(source) {}

  std::string_view next() {
    if (pos_ >= body_.size())
      throw DataError(std::string(source_) + ": unexpected end of file");
    std::size_t end = body_.find('\n', pos_);
    if (end == std::string_view::npos) end = body_.size();
    std::string_view line = body_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_no_;
    return line;
  }

  bool done() const { return pos_ >= body_.size(); }

  std::vector<std::string> fields(std::string_view key, std::size_t count) {
    auto parts = text::split_ws(next());
    if (parts.empty() || parts[0] != key || parts.size() != count + 1)
      fail("expected '" + std::string(key) + "' with " + std::to_string(count) +
           " fields");
    parts.erase(parts.begin());
    return parts;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw DataError(std::string(source_) + ":" + std::to_string(line_no_) +
                    ": " + what);
  }

  std::string where() const {
    return std::string(source_) + ":" + std::to_string(line_no_);
  }

 private:
  std::string_view body_;
  std::string_view source_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

json norm_to_json(const data::NormStats& s) {
  return json{{"na", s.na},
              {"nb", s.nb},
              {"fitted_on", std::string(data::to_string(s.fitted_on))},
              {"min", s.min},
              {"max", s.max},
              {"digest", s.digest()}};
}

data::NormStats norm_from_json(const json& j) {
  data::NormStats s;
  s.na = j.at("na").get<double>();
  s.nb = j.at("nb").get<double>();
  s.fitted_on = data::parse_partition(j.at("fitted_on").get<std::string>());
  s.min = j.at("min").get<RealVector>();
  s.max = j.at("max").get<RealVector>();
  return s;
}

}  // namespace

std::string stamp(std::string body) {
  const std::string digest = text::sha256_hex(body);
  body += kDigestPrefix;
  body += digest;
  body += '\n';
  return body;
}

std::string_view verify_stamp(std::string_view text, std::string_view source) {
  std::string_view trimmed = text;
  while (!trimmed.empty() && (trimmed.back() == '\n' || trimmed.back() == '\r'))
    trimmed.remove_suffix(1);
  const std::size_t nl = trimmed.rfind('\n');
  const std::size_t start = nl == std::string_view::npos ? 0 : nl + 1;
  const std::string_view last = trimmed.substr(start);
  if (last.substr(0, kDigestPrefix.size()) != kDigestPrefix)
    throw DataError(std::string(source) + ": missing sha256 digest line");
  const std::string_view body = text.substr(0, start);
  const std::string_view recorded = text::trim(last.substr(kDigestPrefix.size()));
  if (text::sha256_hex(body) != recorded)
    throw DataError(std::string(source) +
                    ": digest mismatch (file modified or truncated)");
  return body;
}

std::string stamped_digest(std::string_view text) {
  const std::string_view body = verify_stamp(text, "<memory>");
  return text::sha256_hex(body);
}

std::string dataset_to_text(const data::Dataset& d) {
  d.validate();
  std::string out = "hhomlp-dataset 1\n";
  out += "partition " + std::string(data::to_string(d.partition)) + "\n";
  out += "shape " + std::to_string(d.rows) + " " + std::to_string(d.cols) + "\n";
  if (d.norm) {
    out += "norm " + text::format_double(d.norm->na) + " " +
           text::format_double(d.norm->nb) + " " +
           std::string(data::to_string(d.norm->fitted_on)) + "\n";
  } else {
    out += "norm none\n";
  }
  std::vector<double> column(d.rows);
  for (std::size_t c = 0; c < d.cols; ++c) {
    check_name(d.feature_names[c]);
    out += "column " + d.feature_names[c];
    if (d.norm)
      out += " " + text::format_double(d.norm->min[c]) + " " +
             text::format_double(d.norm->max[c]);
    out += "\n";
    for (std::size_t r = 0; r < d.rows; ++r) column[r] = d.values[r * d.cols + c];
    out += text::join_doubles(column) + "\n";
  }
  out += "labels\n";
  for (std::size_t r = 0; r < d.rows; ++r) {
    if (r) out.push_back(' ');
    out.push_back(d.labels[r] ? '1' : '0');
  }
  out += "\n";
  return stamp(std::move(out));
}

data::Dataset dataset_from_text(std::string_view text, std::string_view source) {
  Lines lines(verify_stamp(text, source), source);
  if (text::trim(lines.next()) != "hhomlp-dataset 1")
    lines.fail("not an hhomlp dataset cache (version 1)");
  data::Dataset d;
  d.partition = data::parse_partition(lines.fields("partition", 1)[0]);
  const auto shape = lines.fields("shape", 2);
  d.rows = text::parse_uint(shape[0], lines.where());
  d.cols = text::parse_uint(shape[1], lines.where());

  const auto norm = text::split_ws(lines.next());
  if (norm.size() == 2 && norm[0] == "norm" && norm[1] == "none") {
  } else if (norm.size() == 4 && norm[0] == "norm") {
    data::NormStats s;
    s.na = text::parse_double(norm[1], lines.where());
    s.nb = text::parse_double(norm[2], lines.where());
    s.fitted_on = data::parse_partition(norm[3]);
    d.norm = std::move(s);
  } else {
    lines.fail("malformed 'norm' line");
  }

  d.values.assign(d.rows * d.cols, 0.0);
  for (std::size_t c = 0; c < d.cols; ++c) {
    const auto header = lines.fields("column", d.norm ? 3 : 1);
    d.feature_names.push_back(header[0]);
    if (d.norm) {
      d.norm->min.push_back(text::parse_double(header[1], lines.where()));
      d.norm->max.push_back(text::parse_double(header[2], lines.where()));
    }
    const auto cells = text::split_ws(lines.next());
    if (cells.size() != d.rows)
      lines.fail("column '" + header[0] + "' has " +
                 std::to_string(cells.size()) + " values, expected " +
                 std::to_string(d.rows));
    for (std::size_t r = 0; r < d.rows; ++r)
      d.values[r * d.cols + c] = text::parse_double(cells[r], lines.where());
  }
  if (text::trim(lines.next()) != "labels") lines.fail("expected 'labels'");
  const auto labels = text::split_ws(d.rows ? lines.next() : std::string_view{});
  if (labels.size() != d.rows) lines.fail("label count mismatch");
  for (const auto& l : labels) {
    if (l != "0" && l != "1") lines.fail("labels must be 0 or 1");
    d.labels.push_back(l == "1" ? 1 : 0);
  }
  d.validate();
  return d;
}

std::string mask_to_text(const MaskFile& m) {
  if (m.feature_names.size() != m.mask.size())
    throw DataError("mask: name count does not match mask length");
  std::string out = "# hhomlp feature mask: <feature> <0|1>\n";
  for (std::size_t i = 0; i < m.mask.size(); ++i) {
    check_name(m.feature_names[i]);
    out += m.feature_names[i] + (m.mask.bits[i] ? " 1\n" : " 0\n");
  }
  return stamp(std::move(out));
}

MaskFile mask_from_text(std::string_view text, std::string_view source) {
  const std::string_view body = verify_stamp(text, source);
  MaskFile m;
  std::size_t line_no = 0;
  for (const auto& raw : text::split(body, '\n')) {
    ++line_no;
    const std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto parts = text::split_ws(line);
    if (parts.size() != 2 || (parts[1] != "0" && parts[1] != "1"))
      throw DataError(std::string(source) + ":" + std::to_string(line_no) +
                      ": expected '<feature> <0|1>'");
    m.feature_names.push_back(parts[0]);
    m.mask.bits.push_back(parts[1] == "1" ? 1 : 0);
  }
  if (m.mask.size() == 0) throw DataError(std::string(source) + ": empty mask");
  if (m.mask.selected() == 0)
    throw DataError(std::string(source) + ": mask selects no features");
  return m;
}

std::string model_to_text(const train::TrainedModel& model) {
  const auto& topo = model.topology();
  json j;
  j["format"] = "hhomlp-model";
  j["version"] = 1;
  j["topology"] = {{"input_size", topo.input_size},
                   {"hidden_layers", topo.hidden_layers},
                   {"output_size", topo.output_size}};
  j["parameter_order"] =
      "weights layer by layer (row per destination neuron), then biases "
      "layer by layer";
  j["params"] = model.params.flat();
  j["feature_names"] = model.feature_names;
  j["feature_mask"] = model.feature_mask.bits;
  j["norm_stats"] = norm_to_json(model.norm_stats);
  j["fitness_history"] = model.fitness_history;
  return stamp(j.dump(2) + "\n");
}

train::TrainedModel model_from_text(std::string_view text,
                                    std::string_view source) {
  const std::string_view body = verify_stamp(text, source);
  try {
    const json j = json::parse(body);
    if (j.at("format") != "hhomlp-model" || j.at("version") != 1)
      throw DataError(std::string(source) + ": not an hhomlp model (version 1)");
    mlp::MlpTopology topo;
    topo.input_size = j.at("topology").at("input_size").get<std::size_t>();
    topo.hidden_layers =
        j.at("topology").at("hidden_layers").get<std::vector<std::size_t>>();
    topo.output_size = j.at("topology").at("output_size").get<std::size_t>();
    train::TrainedModel model{
        mlp::MlpParams(topo, j.at("params").get<RealVector>()),
        featsel::FeatureMask{
            j.at("feature_mask").get<std::vector<std::uint8_t>>()},
        j.at("feature_names").get<std::vector<std::string>>(),
        norm_from_json(j.at("norm_stats")),
        j.at("fitness_history").get<std::vector<double>>()};
    if (model.feature_mask.size() != model.feature_names.size())
      throw DataError(std::string(source) +
                      ": feature mask and names differ in length");
    if (model.feature_mask.selected() != topo.input_size)
      throw DataError(std::string(source) +
                      ": mask selection does not match input_size");
    return model;
  } catch (const json::exception& e) {
    throw DataError(std::string(source) + ": malformed model: " + e.what());
  }
}

std::string save_dataset(const std::string& path, const data::Dataset& dataset) {
  const std::string t = dataset_to_text(dataset);
  text::write_file(path, t);
  return stamped_digest(t);
}

data::Dataset load_dataset(const std::string& path) {
  return dataset_from_text(text::read_file(path), path);
}

std::string save_mask(const std::string& path, const MaskFile& mask) {
  const std::string t = mask_to_text(mask);
  text::write_file(path, t);
  return stamped_digest(t);
}

MaskFile load_mask(const std::string& path) {
  return mask_from_text(text::read_file(path), path);
}

std::string save_model(const std::string& path,
                       const train::TrainedModel& model) {
  const std::string t = model_to_text(model);
  text::write_file(path, t);
  return stamped_digest(t);
}

train::TrainedModel load_model(const std::string& path) {
  return model_from_text(text::read_file(path), path);
}

}  // namespace hhomlp::io
