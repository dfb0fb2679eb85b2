#include "hhomlp/train.hpp"

#include <string>

namespace hhomlp::train {

mlp::MlpTopology default_topology(std::size_t inputs) {
  return mlp::MlpTopology{inputs, {5, 5}, 1};
}

TrainedModel train(const data::Dataset& dataset, const TrainConfig& config) {
  dataset.validate();
  if (!dataset.norm)
    throw DataError("train: dataset carries no normalization statistics");
  if (!data::is_normalized(dataset))
    throw DataError("train: dataset values fall outside the normalization range");
  if (dataset.rows == 0) throw DataError("train: empty dataset");

  const featsel::FeatureMask mask =
      config.feature_mask.value_or(featsel::FeatureMask::all(dataset.cols));
  if (mask.size() != dataset.cols)
    throw UsageError("train: feature mask has " + std::to_string(mask.size()) +
                     " bits, dataset has " + std::to_string(dataset.cols) +
                     " features");
  if (config.topology.input_size != mask.selected())
    throw UsageError("train: topology expects " +
                     std::to_string(config.topology.input_size) +
                     " inputs but the mask selects " +
                     std::to_string(mask.selected()));
  if (config.topology.output_size != 1)
    throw UsageError("train: binary detection needs a single output neuron");

  const std::size_t dim = mlp::parameter_count(config.topology);
  const hho::Bounds bounds =
      config.weight_bounds.value_or(hho::Bounds::uniform(dim, -1.0, 1.0));
  if (bounds.dim() != dim)
    throw UsageError("train: weight bounds cover " +
                     std::to_string(bounds.dim()) + " dimensions, network has " +
                     std::to_string(dim) + " parameters");

  const data::Dataset masked = data::select_columns(dataset, mask.bits);
  const mlp::MlpTopology& topology = config.topology;
  const hho::ObjectiveFunction objective(
      [&](std::span<const double> flat) {
        return mlp::mse_fitness(topology, flat, masked.values, masked.labels);
      },
      dim);
  auto result = hho::optimize(objective, config.swarm, bounds);

  return TrainedModel{mlp::MlpParams(topology, std::move(result.best_position)),
                      mask, dataset.feature_names, *dataset.norm,
                      std::move(result.history)};
}

std::vector<double> predict_outputs(const mlp::MlpParams& params,
                                    const data::Dataset& masked) {
  if (masked.cols != params.topology().input_size)
    throw DataError("predict: dataset has " + std::to_string(masked.cols) +
                    " columns, network expects " +
                    std::to_string(params.topology().input_size));
  mlp::Evaluator eval(params.topology(), params.flat());
  std::vector<double> out;
  out.reserve(masked.rows);
  for (std::size_t r = 0; r < masked.rows; ++r)
    out.push_back(eval.output(masked.row(r)));
  return out;
}

metrics::MetricsReport evaluate_outputs(std::span<const double> outputs,
                                        std::span<const std::uint8_t> labels,
                                        double threshold) {
  std::vector<int> predicted;
  predicted.reserve(outputs.size());
  for (double y : outputs)
    predicted.push_back(mlp::predict_class(std::span(&y, 1), threshold));
  return metrics::make_report(metrics::tally(predicted, labels), outputs,
                              labels);
}

metrics::MetricsReport evaluate(const TrainedModel& model,
                                const data::Dataset& dataset) {
  dataset.validate();
  if (!dataset.norm || !(*dataset.norm == model.norm_stats))
    throw DataError(
        "evaluate: dataset normalization statistics differ from the model's");
  if (dataset.feature_names != model.feature_names)
    throw DataError("evaluate: dataset columns differ from the model's mask columns");
  const data::Dataset masked =
      data::select_columns(dataset, model.feature_mask.bits);
  const auto outputs = predict_outputs(model.params, masked);
  return evaluate_outputs(outputs, dataset.labels);
}

}  // namespace hhomlp::train
