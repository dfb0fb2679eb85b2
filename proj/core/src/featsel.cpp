#include "hhomlp/featsel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace hhomlp::featsel {

std::size_t FeatureMask::selected() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), 1));
}

FeatureMask FeatureMask::all(std::size_t d) {
  return FeatureMask{std::vector<std::uint8_t>(d, 1)};
}

void CostWeights::validate() const {
  if (alpha < 0.0 || alpha > 1.0 || beta_fs < 0.0 || beta_fs > 1.0)
    throw UsageError("cost weights must lie in [0, 1]");
  if (std::abs(alpha + beta_fs - 1.0) > 1e-12)
    throw UsageError("cost weights must sum to 1");
}

FeatureMask binarize_position(std::span<const double> position,
                              double threshold) {
  if (position.empty()) throw UsageError("binarize_position: empty position");
  FeatureMask mask;
  mask.bits.reserve(position.size());
  for (double p : position) mask.bits.push_back(p >= threshold ? 1 : 0);
  if (mask.selected() == 0) {
    const auto best = std::max_element(position.begin(), position.end());
    mask.bits[static_cast<std::size_t>(best - position.begin())] = 1;
  }
  return mask;
}

double cost_ids(double error_rate, const FeatureMask& mask,
                const CostWeights& weights) {
  if (mask.size() == 0) throw UsageError("cost_ids: empty mask");
  const double ratio = static_cast<double>(mask.selected()) /
                       static_cast<double>(mask.size());
  return weights.alpha * error_rate + weights.beta_fs * ratio;
}

InnerEvaluator mlp_inner_evaluator(InnerMlpConfig config) {
  return [config](const data::Dataset& train,
                  const data::Dataset& validation) {
    mlp::MlpTopology topology{train.cols, config.hidden_layers, 1};
    const std::size_t dim = mlp::parameter_count(topology);
    hho::SwarmConfig swarm;
    swarm.population_size = config.population_size;
    swarm.max_iterations = config.max_iterations;
    swarm.seed = config.seed;
    const hho::ObjectiveFunction objective(
        [&](std::span<const double> flat) {
          return mlp::mse_fitness(topology, flat, train.values, train.labels);
        },
        dim);
    const auto result = hho::optimize(
        objective, swarm,
        hho::Bounds::uniform(dim, -config.weight_bound, config.weight_bound));

    mlp::Evaluator eval(topology, result.best_position);
    std::size_t wrong = 0;
    for (std::size_t r = 0; r < validation.rows; ++r) {
      const int predicted = eval.output(validation.row(r)) >= 0.5 ? 1 : 0;
      if (predicted != validation.labels[r]) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(validation.rows);
  };
}

MaskScorer::MaskScorer(const data::Dataset& dataset,
                       const SelectionConfig& config, InnerEvaluator inner_eval)
    : weights_(config.weights), inner_(std::move(inner_eval)) {
  config.weights.validate();
  if (!inner_) throw UsageError("feature selection: missing inner evaluator");
  if (dataset.rows < 2)
    throw DataError("feature selection: need at least 2 rows");
  data::SplitSpec spec{config.inner_train_fraction, true, config.split_seed};
  auto [train, validation] = data::split(dataset, spec);
  train_ = std::move(train);
  validation_ = std::move(validation);
}

double MaskScorer::error(const FeatureMask& mask) const {
  const auto train = data::select_columns(train_, mask.bits);
  const auto validation = data::select_columns(validation_, mask.bits);
  const double err = inner_(train, validation);
  if (!(err >= 0.0 && err <= 1.0))
    throw ComputeError("inner evaluator returned an error rate outside [0,1]");
  return err;
}

double MaskScorer::cost(const FeatureMask& mask) const {
  return cost_ids(error(mask), mask, weights_);
}

SelectionResult select_features(const data::Dataset& dataset,
                                const SelectionConfig& config,
                                const InnerEvaluator& inner_eval) {
  dataset.validate();
  const std::size_t d = dataset.cols;
  const MaskScorer scorer(dataset, config, inner_eval);

  // Fitness depends only on the mask, so identical masks share one score.
  std::map<std::vector<std::uint8_t>, double> memo;
  std::mutex memo_mutex;
  const hho::ObjectiveFunction objective(
      [&](std::span<const double> position) {
        const FeatureMask mask = binarize_position(position, config.threshold);
        {
          std::lock_guard lock(memo_mutex);
          if (auto it = memo.find(mask.bits); it != memo.end())
            return it->second;
        }
        const double c = scorer.cost(mask);
        std::lock_guard lock(memo_mutex);
        memo.emplace(mask.bits, c);
        return c;
      },
      d);

  const auto result =
      hho::optimize(objective, config.swarm, hho::Bounds::uniform(d, 0.0, 1.0));
  SelectionResult out;
  out.mask = binarize_position(result.best_position, config.threshold);
  out.best_cost = result.best_fitness;
  out.history = result.history;
  out.distinct_masks_evaluated = memo.size();
  return out;
}

}  // namespace hhomlp::featsel
