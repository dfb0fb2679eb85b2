#pragma once

// Subcommand implementations behind the hhomlp tool. Each command takes its
// fully resolved options and writes its artifacts plus a run manifest.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hhomlp/metrics.hpp"

namespace hhomlp::cli {

struct SynthOptions {
  std::size_t rows = 10000;
  std::uint64_t seed = 0;
  std::string out_csv;
  std::string schema_out;
};

struct PrepareOptions {
  std::string input_csv;
  std::string schema;
  std::string out_dir;
  bool header = false;
  double train_fraction = 0.8;
  bool stratified = true;
  std::uint64_t seed = 0;
  std::string encoding = "ordinal";  // ordinal | onehot
  double range_lo = 0.0;
  double range_hi = 1.0;
  std::size_t max_rows = 0;  // 0 keeps every row
};

struct SelectOptions {
  std::string train_cache;
  std::string out_mask;
  std::size_t population = 10;
  std::size_t iterations = 30;
  std::uint64_t seed = 0;
  std::optional<double> alpha;  // defaults to 1 - beta_fs
  double beta_fs = 0.01;
  double threshold = 0.5;
  std::size_t inner_population = 5;
  std::size_t inner_iterations = 10;
  std::vector<std::size_t> inner_hidden{5};
  std::uint64_t inner_seed = 7;
  double inner_fraction = 0.7;
  std::size_t max_rows = 0;  // stratified subsample of the cache; 0 = all
  std::size_t threads = 1;
};

struct TrainOptions {
  std::string train_cache;
  std::string mask;  // optional
  std::string out_model;
  std::size_t population = 10;
  std::size_t iterations = 30;
  std::uint64_t seed = 0;
  std::vector<std::size_t> hidden{5, 5};
  std::optional<std::size_t> inputs;  // cross-check against the mask
  double weight_bound = 1.0;
  std::size_t threads = 1;
};

struct EvaluateOptions {
  std::string model;
  std::string data_cache;
  std::string csv_out;     // appended, header written once
  std::string report_out;  // JSON report
};

struct BenchOptions {
  std::string train_cache;
  std::string test_cache;  // optional
  std::string mask;        // optional
  std::vector<std::size_t> sizes{5, 10, 15, 20, 30};
  std::size_t seeds = 10;
  std::uint64_t base_seed = 0;
  std::size_t iterations = 30;
  std::vector<std::size_t> hidden{5, 5};
  std::string out_table;
  std::string out_plot;
  std::size_t threads = 1;
};

struct BenchCell {
  std::size_t size = 0;
  std::uint64_t seed = 0;
  double train_mse = 0.0;
  std::optional<double> test_mse;
};

struct BenchResult {
  std::vector<BenchCell> cells;  // ordered by (size, seed)
  std::vector<std::pair<std::size_t, double>> median_train_mse;
};

// `config_text` is the resolved option set in config-file form; it is
// recorded in the manifest so the run can be repeated from it.
void cmd_synth(const SynthOptions& o, std::ostream& log);
void cmd_prepare(const PrepareOptions& o, const std::string& config_text,
                 std::ostream& log);
void cmd_select(const SelectOptions& o, const std::string& config_text,
                std::ostream& log);
void cmd_train(const TrainOptions& o, const std::string& config_text,
               std::ostream& log);
metrics::MetricsReport cmd_evaluate(const EvaluateOptions& o,
                                    const std::string& config_text,
                                    std::ostream& out);
BenchResult cmd_bench_swarm(const BenchOptions& o,
                            const std::string& config_text, std::ostream& log);

// Parses argv and dispatches. Returns the process exit code:
// 0 success, 1 usage, 2 data error, 3 compute error.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace hhomlp::cli
