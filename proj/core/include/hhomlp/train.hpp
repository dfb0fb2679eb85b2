#pragma once

// HHO-MLP training: each hawk is a flat weight+bias vector, its fitness is
// the network's mean squared error on the training rows.

#include <optional>
#include <vector>

#include "hhomlp/data.hpp"
#include "hhomlp/featsel.hpp"
#include "hhomlp/hho.hpp"
#include "hhomlp/metrics.hpp"
#include "hhomlp/mlp.hpp"

namespace hhomlp::train {

struct TrainConfig {
  mlp::MlpTopology topology;
  hho::SwarmConfig swarm;
  // Defaults to [-1, 1] in every dimension.
  std::optional<hho::Bounds> weight_bounds;
  // Mask over the dataset's columns; all columns when absent.
  std::optional<featsel::FeatureMask> feature_mask;
};

struct TrainedModel {
  mlp::MlpParams params;
  featsel::FeatureMask feature_mask;
  std::vector<std::string> feature_names;  // full column list the mask covers
  data::NormStats norm_stats;
  std::vector<double> fitness_history;

  const mlp::MlpTopology& topology() const { return params.topology(); }
  bool operator==(const TrainedModel&) const = default;
};

// Default shape used by the tools: two hidden layers of five neurons.
mlp::MlpTopology default_topology(std::size_t inputs);

TrainedModel train(const data::Dataset& dataset, const TrainConfig& config);

// Raw network outputs for every row of an already masked dataset.
std::vector<double> predict_outputs(const mlp::MlpParams& params,
                                    const data::Dataset& masked);

metrics::MetricsReport evaluate_outputs(std::span<const double> outputs,
                                        std::span<const std::uint8_t> labels,
                                        double threshold = 0.5);

// `dataset` must carry the model's normalization statistics and the full
// column list its mask was built on.
metrics::MetricsReport evaluate(const TrainedModel& model,
                                const data::Dataset& dataset);

}  // namespace hhomlp::train
