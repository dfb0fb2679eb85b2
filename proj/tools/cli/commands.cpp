#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <thread>

#include "hhomlp/data.hpp"
#include "hhomlp/featsel.hpp"
#include "hhomlp/io.hpp"
#include "hhomlp/synthetic.hpp"
#include "hhomlp/text.hpp"
#include "hhomlp/train.hpp"

namespace hhomlp::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr const char* kVersion = "0.1.0";

json file_ref(const std::string& path) {
  return json{{"path", path},
              {"sha256", text::sha256_hex(text::read_file(path))}};
}

json artifact_ref(const std::string& path, const std::string& digest) {
  return json{{"path", path}, {"sha256", digest}};
}

// Manifest = resolved config + input/output digests + results. The "digest"
// field covers everything except itself and the wall-clock time.
void write_manifest(const std::string& path, const std::string& command,
                    json config, const std::string& config_text, json inputs,
                    json outputs, json results, double wall_clock_seconds) {
  json m;
  m["tool"] = "hhomlp";
  m["version"] = kVersion;
  m["command"] = command;
  m["config"] = std::move(config);
  m["config_text"] = config_text;
  m["inputs"] = std::move(inputs);
  m["outputs"] = std::move(outputs);
  m["results"] = std::move(results);
  m["digest"] = text::sha256_hex(m.dump());
  m["wall_clock_seconds"] = wall_clock_seconds;
  text::write_file(path, m.dump(2) + "\n");
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

data::Dataset subsample(const data::Dataset& d, std::size_t max_rows,
                        std::uint64_t seed) {
  if (max_rows == 0 || max_rows >= d.rows) return d;
  const double fraction =
      static_cast<double>(max_rows) / static_cast<double>(d.rows);
  const auto [keep, drop] =
      data::split_indices(d.labels, data::SplitSpec{fraction, true, seed});
  data::Dataset out = data::take_rows(d, keep);
  return out;
}

featsel::FeatureMask mask_for(const data::Dataset& d, const std::string& path) {
  if (path.empty()) return featsel::FeatureMask::all(d.cols);
  const io::MaskFile m = io::load_mask(path);
  if (m.feature_names != d.feature_names)
    throw DataError("mask '" + path +
                    "' names different features than the dataset cache");
  return m.mask;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

void cmd_synth(const SynthOptions& o, std::ostream& log) {
  if (o.rows == 0) throw UsageError("synth: --rows must be >= 1");
  text::write_file(o.out_csv, synthetic::kdd_like_csv(o.rows, o.seed));
  if (!o.schema_out.empty())
    text::write_file(o.schema_out, data::Schema::kdd().to_text());
  log << "wrote " << o.rows << " KDD-style records to " << o.out_csv << "\n";
}

void cmd_prepare(const PrepareOptions& o, const std::string& config_text,
                 std::ostream& log) {
  const auto start = Clock::now();
  if (!(o.range_lo < o.range_hi))
    throw UsageError("prepare: --range-lo must be < --range-hi");
  data::CategoricalPolicy policy;
  if (o.encoding == "ordinal") policy = data::CategoricalPolicy::kOrdinal;
  else if (o.encoding == "onehot") policy = data::CategoricalPolicy::kOneHot;
  else throw UsageError("prepare: --encoding must be 'ordinal' or 'onehot'");

  const data::Schema schema = data::Schema::load(o.schema);
  auto records = data::load_csv(o.input_csv, schema, {o.header, ','});
  if (o.max_rows > 0 && records.size() > o.max_rows)
    records.resize(o.max_rows);
  if (records.size() < 2)
    throw DataError("prepare: need at least 2 records, found " +
                    std::to_string(records.size()));
  const auto labels = data::binarize_labels(records);

  const auto [train_idx, test_idx] = data::split_indices(
      labels, data::SplitSpec{o.train_fraction, o.stratified, o.seed});
  auto pick = [&](const std::vector<std::size_t>& idx) {
    std::pair<std::vector<data::RawRecord>, std::vector<std::uint8_t>> out;
    for (std::size_t i : idx) {
      out.first.push_back(records[i]);
      out.second.push_back(labels[i]);
    }
    return out;
  };
  auto [train_records, train_labels] = pick(train_idx);
  auto [test_records, test_labels] = pick(test_idx);

  // Codings and statistics come from the training partition only.
  const auto encoder = data::CategoricalEncoder::fit(
      train_records, schema, policy, data::Partition::kTrain);
  data::Dataset train = data::make_dataset(encoder.encode(train_records),
                                           encoder.width(), train_labels,
                                           encoder.feature_names());
  train.partition = data::Partition::kTrain;
  data::Dataset test = data::make_dataset(encoder.encode(test_records),
                                          encoder.width(), test_labels,
                                          encoder.feature_names());
  test.partition = data::Partition::kTest;

  const auto stats = data::fit_norm_stats(train, o.range_lo, o.range_hi);
  train = data::normalize(train, stats);
  test = data::normalize(test, stats);

  std::filesystem::create_directories(o.out_dir);
  const std::string train_path = o.out_dir + "/train.cache";
  const std::string test_path = o.out_dir + "/test.cache";
  const std::string train_digest = io::save_dataset(train_path, train);
  const std::string test_digest = io::save_dataset(test_path, test);

  json config = {{"input", o.input_csv},
                 {"schema", o.schema},
                 {"out_dir", o.out_dir},
                 {"header", o.header},
                 {"train_fraction", o.train_fraction},
                 {"stratified", o.stratified},
                 {"seed", o.seed},
                 {"encoding", o.encoding},
                 {"range", {o.range_lo, o.range_hi}},
                 {"max_rows", o.max_rows}};
  json results = {{"records", records.size()},
                  {"train_rows", train.rows},
                  {"test_rows", test.rows},
                  {"features", train.cols},
                  {"norm_digest", stats.digest()}};
  write_manifest(o.out_dir + "/prepare.manifest.json", "prepare", config,
                 config_text,
                 {{"input", file_ref(o.input_csv)},
                  {"schema", file_ref(o.schema)}},
                 {{"train", artifact_ref(train_path, train_digest)},
                  {"test", artifact_ref(test_path, test_digest)}},
                 results, seconds_since(start));
  log << "prepared " << train.rows << " train / " << test.rows
      << " test rows with " << train.cols << " features in " << o.out_dir
      << "\n";
}

void cmd_select(const SelectOptions& o, const std::string& config_text,
                std::ostream& log) {
  const auto start = Clock::now();
  featsel::SelectionConfig cfg;
  cfg.swarm.population_size = o.population;
  cfg.swarm.max_iterations = o.iterations;
  cfg.swarm.seed = o.seed;
  cfg.swarm.eval_threads = o.threads;
  cfg.weights.beta_fs = o.beta_fs;
  cfg.weights.alpha = o.alpha.value_or(1.0 - o.beta_fs);
  cfg.threshold = o.threshold;
  cfg.inner_train_fraction = o.inner_fraction;
  cfg.weights.validate();
  cfg.swarm.validate();
  if (o.beta_fs == 0.0)
    log << "warning: --beta-fs 0 leaves the mask size unconstrained\n";

  const data::Dataset full = io::load_dataset(o.train_cache);
  const data::Dataset dataset = subsample(full, o.max_rows, o.seed);

  featsel::InnerMlpConfig inner;
  inner.hidden_layers = o.inner_hidden;
  inner.population_size = o.inner_population;
  inner.max_iterations = o.inner_iterations;
  inner.seed = o.inner_seed;
  const auto result = featsel::select_features(
      dataset, cfg, featsel::mlp_inner_evaluator(inner));

  const std::string digest = io::save_mask(
      o.out_mask, io::MaskFile{result.mask, dataset.feature_names});

  json config = {{"train", o.train_cache},
                 {"out", o.out_mask},
                 {"population", o.population},
                 {"iterations", o.iterations},
                 {"seed", o.seed},
                 {"alpha", cfg.weights.alpha},
                 {"beta_fs", cfg.weights.beta_fs},
                 {"threshold", o.threshold},
                 {"inner_population", o.inner_population},
                 {"inner_iterations", o.inner_iterations},
                 {"inner_hidden", o.inner_hidden},
                 {"inner_seed", o.inner_seed},
                 {"inner_fraction", o.inner_fraction},
                 {"max_rows", o.max_rows}};
  std::vector<std::string> selected;
  for (std::size_t i = 0; i < result.mask.size(); ++i)
    if (result.mask.bits[i]) selected.push_back(dataset.feature_names[i]);
  json results = {{"best_cost", result.best_cost},
                  {"history", result.history},
                  {"selected_count", result.mask.selected()},
                  {"feature_count", result.mask.size()},
                  {"selected", selected},
                  {"distinct_masks_evaluated", result.distinct_masks_evaluated}};
  write_manifest(o.out_mask + ".manifest.json", "select", config, config_text,
                 {{"train", file_ref(o.train_cache)}},
                 {{"mask", artifact_ref(o.out_mask, digest)}}, results,
                 seconds_since(start));
  log << "selected " << result.mask.selected() << " of " << result.mask.size()
      << " features (cost " << result.best_cost << ") -> " << o.out_mask
      << "\n";
}

void cmd_train(const TrainOptions& o, const std::string& config_text,
               std::ostream& log) {
  const auto start = Clock::now();
  const data::Dataset dataset = io::load_dataset(o.train_cache);
  const featsel::FeatureMask mask = mask_for(dataset, o.mask);
  if (o.inputs && *o.inputs != mask.selected())
    throw UsageError("train: --inputs " + std::to_string(*o.inputs) +
                     " does not match the " + std::to_string(mask.selected()) +
                     " features selected by the mask");

  train::TrainConfig cfg;
  cfg.topology = mlp::MlpTopology{mask.selected(), o.hidden, 1};
  cfg.topology.validate();
  cfg.swarm.population_size = o.population;
  cfg.swarm.max_iterations = o.iterations;
  cfg.swarm.seed = o.seed;
  cfg.swarm.eval_threads = o.threads;
  cfg.swarm.validate();
  if (!(o.weight_bound > 0.0))
    throw UsageError("train: --weight-bound must be positive");
  cfg.weight_bounds = hho::Bounds::uniform(
      mlp::parameter_count(cfg.topology), -o.weight_bound, o.weight_bound);
  cfg.feature_mask = mask;

  const train::TrainedModel model = train::train(dataset, cfg);
  const std::string digest = io::save_model(o.out_model, model);

  json config = {{"train", o.train_cache},
                 {"mask", o.mask},
                 {"out", o.out_model},
                 {"population", o.population},
                 {"iterations", o.iterations},
                 {"seed", o.seed},
                 {"hidden", o.hidden},
                 {"weight_bound", o.weight_bound}};
  json inputs = {{"train", file_ref(o.train_cache)}};
  if (!o.mask.empty()) inputs["mask"] = file_ref(o.mask);
  json results = {{"history", model.fitness_history},
                  {"final_mse", model.fitness_history.back()},
                  {"parameter_count", model.params.flat().size()},
                  {"topology", join_sizes(cfg.topology.layer_sizes())}};
  write_manifest(o.out_model + ".manifest.json", "train", config, config_text,
                 inputs, {{"model", artifact_ref(o.out_model, digest)}},
                 results, seconds_since(start));
  log << "trained " << join_sizes(cfg.topology.layer_sizes())
      << " network, final training MSE " << model.fitness_history.back()
      << " -> " << o.out_model << "\n";
}

metrics::MetricsReport cmd_evaluate(const EvaluateOptions& o,
                                    const std::string& config_text,
                                    std::ostream& out) {
  const train::TrainedModel model = io::load_model(o.model);
  const data::Dataset dataset = io::load_dataset(o.data_cache);
  if (!dataset.norm || !(*dataset.norm == model.norm_stats))
    throw DataError(
        "refusing to evaluate: normalization statistics of '" + o.data_cache +
        "' (digest " + (dataset.norm ? dataset.norm->digest() : "none") +
        ") differ from the model's (digest " + model.norm_stats.digest() + ")");
  const metrics::MetricsReport report = train::evaluate(model, dataset);

  out << "rows        " << report.counts.total() << "\n"
      << "accuracy    " << text::format_double(report.accuracy) << "\n"
      << "sensitivity " << metrics::format_ratio(report.sensitivity) << "\n"
      << "specificity " << metrics::format_ratio(report.specificity) << "\n"
      << "mse         " << text::format_double(report.mse) << "\n"
      << "rmse        " << text::format_double(report.rmse) << "\n"
      << "confusion   tp=" << report.counts.tp << " tn=" << report.counts.tn
      << " fp=" << report.counts.fp << " fn=" << report.counts.fn << "\n";

  if (!o.csv_out.empty()) {
    const bool fresh = !std::filesystem::exists(o.csv_out) ||
                       std::filesystem::file_size(o.csv_out) == 0;
    std::ofstream csv(o.csv_out, std::ios::app);
    if (!csv) throw DataError("cannot write '" + o.csv_out + "'");
    if (fresh) csv << metrics::kCsvHeader << "\n";
    csv << metrics::to_csv_row(report) << "\n";
  }
  if (!o.report_out.empty()) {
    auto ratio = [](const metrics::Ratio& r) {
      return r ? json(*r) : json("NA");
    };
    json j = {{"accuracy", report.accuracy},
              {"sensitivity", ratio(report.sensitivity)},
              {"specificity", ratio(report.specificity)},
              {"mse", report.mse},
              {"rmse", report.rmse},
              {"tp", report.counts.tp},
              {"tn", report.counts.tn},
              {"fp", report.counts.fp},
              {"fn", report.counts.fn},
              {"model", file_ref(o.model)},
              {"data", file_ref(o.data_cache)},
              {"config_text", config_text}};
    text::write_file(o.report_out, io::stamp(j.dump(2) + "\n"));
  }
  return report;
}

BenchResult cmd_bench_swarm(const BenchOptions& o,
                            const std::string& config_text, std::ostream& log) {
  const auto start = Clock::now();
  if (o.sizes.empty()) throw UsageError("bench-swarm: need at least one size");
  if (o.seeds == 0) throw UsageError("bench-swarm: need at least one seed");
  const data::Dataset train_set = io::load_dataset(o.train_cache);
  const featsel::FeatureMask mask = mask_for(train_set, o.mask);
  std::optional<data::Dataset> test_set;
  if (!o.test_cache.empty()) {
    test_set = io::load_dataset(o.test_cache);
    if (!test_set->norm || !train_set.norm ||
        !(*test_set->norm == *train_set.norm))
      throw DataError("bench-swarm: test cache statistics differ from train");
  }

  BenchResult result;
  for (std::size_t size : o.sizes)
    for (std::size_t s = 0; s < o.seeds; ++s)
      result.cells.push_back({size, o.base_seed + s, 0.0, std::nullopt});

  auto run_cell = [&](BenchCell& cell) {
    train::TrainConfig cfg;
    cfg.topology = mlp::MlpTopology{mask.selected(), o.hidden, 1};
    cfg.swarm.population_size = cell.size;
    cfg.swarm.max_iterations = o.iterations;
    cfg.swarm.seed = cell.seed;
    cfg.feature_mask = mask;
    const auto model = train::train(train_set, cfg);
    cell.train_mse = model.fitness_history.back();
    if (test_set) cell.test_mse = train::evaluate(model, *test_set).mse;
  };

  const std::size_t workers =
      std::max<std::size_t>(1, std::min(o.threads, result.cells.size()));
  if (workers == 1) {
    for (auto& cell : result.cells) run_cell(cell);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = next++; i < result.cells.size(); i = next++)
              run_cell(result.cells[i]);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::string table = "size,seed,train_mse,test_mse\n";
  for (const auto& c : result.cells)
    table += std::to_string(c.size) + "," + std::to_string(c.seed) + "," +
             text::format_double(c.train_mse) + "," +
             (c.test_mse ? text::format_double(*c.test_mse) : "NA") + "\n";
  std::string plot = "# size,median_train_mse\n";
  for (std::size_t size : o.sizes) {
    std::vector<double> v;
    for (const auto& c : result.cells)
      if (c.size == size) v.push_back(c.train_mse);
    const double m = median(v);
    result.median_train_mse.emplace_back(size, m);
    plot += std::to_string(size) + "," + text::format_double(m) + "\n";
  }

  json outputs = json::object();
  if (!o.out_table.empty()) {
    text::write_file(o.out_table, table);
    outputs["table"] = artifact_ref(o.out_table, text::sha256_hex(table));
  }
  if (!o.out_plot.empty()) {
    text::write_file(o.out_plot, plot);
    outputs["plot"] = artifact_ref(o.out_plot, text::sha256_hex(plot));
  }
  log << plot;
  const std::string manifest_base =
      !o.out_table.empty() ? o.out_table : o.out_plot;
  if (!manifest_base.empty()) {
    json config = {{"train", o.train_cache},
                   {"test", o.test_cache},
                   {"mask", o.mask},
                   {"sizes", o.sizes},
                   {"seeds", o.seeds},
                   {"base_seed", o.base_seed},
                   {"iterations", o.iterations},
                   {"hidden", o.hidden}};
    json inputs = {{"train", file_ref(o.train_cache)}};
    if (!o.test_cache.empty()) inputs["test"] = file_ref(o.test_cache);
    if (!o.mask.empty()) inputs["mask"] = file_ref(o.mask);
    json medians = json::array();
    for (const auto& [size, m] : result.median_train_mse)
      medians.push_back({{"size", size}, {"median_train_mse", m}});
    write_manifest(manifest_base + ".manifest.json", "bench-swarm", config,
                   config_text, inputs, outputs, {{"medians", medians}},
                   seconds_since(start));
  }
  return result;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"HHO-trained MLP intrusion detection toolkit", "hhomlp"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "Read options from a TOML/INI config file");
  app.require_subcommand(1);

  SynthOptions synth;
  auto* s = app.add_subcommand("synth", "Generate KDD-style synthetic traffic");
  s->add_option("--rows", synth.rows, "Record count")->capture_default_str();
  s->add_option("--seed", synth.seed, "Generator seed")->capture_default_str();
  s->add_option("--out", synth.out_csv, "Output CSV")->required();
  s->add_option("--schema-out", synth.schema_out, "Also write the KDD schema");

  PrepareOptions prep;
  auto* p = app.add_subcommand("prepare", "Encode, split and normalize a CSV");
  p->add_option("--input", prep.input_csv, "Traffic CSV")
      ->required()
      ->check(CLI::ExistingFile);
  p->add_option("--schema", prep.schema, "Column schema file")
      ->required()
      ->check(CLI::ExistingFile);
  p->add_option("--out-dir", prep.out_dir, "Directory for the caches")
      ->required();
  p->add_flag("--header", prep.header, "Input has a header row");
  p->add_option("--train-fraction", prep.train_fraction)->capture_default_str();
  p->add_option("--stratified", prep.stratified,
                 "Stratify the split by label (true/false)")
      ->capture_default_str();
  p->add_option("--seed", prep.seed)->capture_default_str();
  p->add_option("--encoding", prep.encoding, "ordinal | onehot")
      ->capture_default_str();
  p->add_option("--range-lo", prep.range_lo)->capture_default_str();
  p->add_option("--range-hi", prep.range_hi)->capture_default_str();
  p->add_option("--max-rows", prep.max_rows, "Keep the first N records (0 = all)")
      ->capture_default_str();

  SelectOptions sel;
  double alpha = -1.0;
  auto* f = app.add_subcommand("select", "HHO wrapper feature selection");
  f->add_option("--train", sel.train_cache, "Training cache")
      ->required()
      ->check(CLI::ExistingFile);
  f->add_option("--out", sel.out_mask, "Mask file to write")->required();
  f->add_option("--population", sel.population)->capture_default_str();
  f->add_option("--iterations", sel.iterations)->capture_default_str();
  f->add_option("--seed", sel.seed)->capture_default_str();
  f->add_option("--alpha", alpha, "Error weight (default 1 - beta-fs)");
  f->add_option("--beta-fs", sel.beta_fs, "Feature-ratio weight")
      ->capture_default_str();
  f->add_option("--threshold", sel.threshold)->capture_default_str();
  f->add_option("--inner-population", sel.inner_population)
      ->capture_default_str();
  f->add_option("--inner-iterations", sel.inner_iterations)
      ->capture_default_str();
  f->add_option("--inner-hidden", sel.inner_hidden)
      ->delimiter(',')
      ->capture_default_str();
  f->add_option("--inner-seed", sel.inner_seed)->capture_default_str();
  f->add_option("--inner-fraction", sel.inner_fraction)->capture_default_str();
  f->add_option("--max-rows", sel.max_rows, "Stratified subsample (0 = all)")
      ->capture_default_str();
  f->add_option("--threads", sel.threads)->capture_default_str();

  TrainOptions tr;
  std::size_t inputs = 0;
  auto* t = app.add_subcommand("train", "Train an MLP with HHO");
  t->add_option("--train", tr.train_cache, "Training cache")
      ->required()
      ->check(CLI::ExistingFile);
  t->add_option("--mask", tr.mask, "Feature mask file")
      ->check(CLI::ExistingFile);
  t->add_option("--out", tr.out_model, "Model file to write")->required();
  t->add_option("--population", tr.population)->capture_default_str();
  t->add_option("--iterations", tr.iterations)->capture_default_str();
  t->add_option("--seed", tr.seed)->capture_default_str();
  t->add_option("--hidden", tr.hidden, "Hidden layer sizes, e.g. 5,5")
      ->delimiter(',')
      ->capture_default_str();
  auto* inputs_opt =
      t->add_option("--inputs", inputs, "Expected input width (checked)");
  t->add_option("--weight-bound", tr.weight_bound)->capture_default_str();
  t->add_option("--threads", tr.threads)->capture_default_str();

  EvaluateOptions ev;
  auto* e = app.add_subcommand("evaluate", "Score a model on a dataset cache");
  e->add_option("--model", ev.model)->required()->check(CLI::ExistingFile);
  e->add_option("--data", ev.data_cache)->required()->check(CLI::ExistingFile);
  e->add_option("--csv", ev.csv_out, "Append a metrics row to this CSV");
  e->add_option("--report", ev.report_out, "Write a JSON report");

  BenchOptions bench;
  auto* b = app.add_subcommand("bench-swarm", "Swarm-size sweep");
  b->add_option("--train", bench.train_cache)
      ->required()
      ->check(CLI::ExistingFile);
  b->add_option("--test", bench.test_cache)->check(CLI::ExistingFile);
  b->add_option("--mask", bench.mask)->check(CLI::ExistingFile);
  b->add_option("--sizes", bench.sizes)->delimiter(',')->capture_default_str();
  b->add_option("--seeds", bench.seeds, "Seeds per size")->capture_default_str();
  b->add_option("--base-seed", bench.base_seed)->capture_default_str();
  b->add_option("--iterations", bench.iterations)->capture_default_str();
  b->add_option("--hidden", bench.hidden)->delimiter(',')->capture_default_str();
  b->add_option("--out-table", bench.out_table);
  b->add_option("--out-plot", bench.out_plot);
  b->add_option("--threads", bench.threads)->capture_default_str();

  for (auto* sub : app.get_subcommands({})) sub->configurable();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::kUsage);
  }

  // Only the subcommand that ran, in the same form --config accepts.
  CLI::App* active = app.get_subcommands().front();
  // Unset options render as empty strings; drop them so the text reads back.
  std::string config_text;
  for (const auto& line :
       text::split(app.get_config_formatter()->to_config(
                       active, true, false, active->get_name() + "."),
                   '\n'))
    if (!line.empty() && !line.ends_with("=\"\""))
      config_text += std::string(line) + "\n";
  try {
    if (*s) {
      cmd_synth(synth, out);
    } else if (*p) {
      cmd_prepare(prep, config_text, out);
    } else if (*f) {
      if (alpha >= 0.0) sel.alpha = alpha;
      cmd_select(sel, config_text, err);
    } else if (*t) {
      if (inputs_opt->count() > 0) tr.inputs = inputs;
      cmd_train(tr, config_text, out);
    } else if (*e) {
      cmd_evaluate(ev, config_text, out);
    } else if (*b) {
      cmd_bench_swarm(bench, config_text, out);
    }
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return static_cast<int>(ex.kind());
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return static_cast<int>(ErrorKind::kCompute);
  }
  return 0;
}

}  // namespace hhomlp::cli
