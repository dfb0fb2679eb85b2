#pragma once

// Wrapper feature selection: hawks live in [0,1]^D, each position is
// thresholded into a feature mask, and the mask is scored by the error of a
// classifier trained on the selected columns plus a mask-size penalty.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hhomlp/data.hpp"
#include "hhomlp/hho.hpp"
#include "hhomlp/mlp.hpp"

namespace hhomlp::featsel {

struct FeatureMask {
  std::vector<std::uint8_t> bits;

  std::size_t size() const noexcept { return bits.size(); }
  std::size_t selected() const;
  bool operator==(const FeatureMask&) const = default;

  static FeatureMask all(std::size_t d);
};

// Weights of the error term and of the selected-feature ratio.
struct CostWeights {
  double alpha = 0.99;
  double beta_fs = 0.01;

  void validate() const;
};

// bit d = position[d] >= threshold. An all-zero result is repaired by setting
// the bit with the largest coordinate (first one on ties).
FeatureMask binarize_position(std::span<const double> position,
                              double threshold = 0.5);

// alpha * error_rate + beta_fs * selected / D.
double cost_ids(double error_rate, const FeatureMask& mask,
                const CostWeights& weights);

// Classifier-error estimator on masked partitions; returns Err in [0, 1].
using InnerEvaluator =
    std::function<double(const data::Dataset& train,
                         const data::Dataset& validation)>;

// Budget and shape of the default inner evaluator: a small MLP trained by a
// short HHO run, scored by classification error on the validation rows.
struct InnerMlpConfig {
  std::vector<std::size_t> hidden_layers{5};
  std::size_t population_size = 5;
  std::size_t max_iterations = 10;
  std::uint64_t seed = 7;
  double weight_bound = 1.0;
};

InnerEvaluator mlp_inner_evaluator(InnerMlpConfig config = {});

struct SelectionConfig {
  hho::SwarmConfig swarm;
  CostWeights weights;
  double threshold = 0.5;
  // Share of the input rows used to train the inner evaluator; the rest
  // score it.
  double inner_train_fraction = 0.7;
  std::uint64_t split_seed = 11;
};

struct SelectionResult {
  FeatureMask mask;
  double best_cost = 0.0;
  std::vector<double> history;
  std::size_t distinct_masks_evaluated = 0;
};

SelectionResult select_features(const data::Dataset& dataset,
                                const SelectionConfig& config,
                                const InnerEvaluator& inner_eval);

// Cost of one mask under the same inner split select_features uses. Shared by
// the selector and brute-force checks.
class MaskScorer {
 public:
  MaskScorer(const data::Dataset& dataset, const SelectionConfig& config,
             InnerEvaluator inner_eval);

  double error(const FeatureMask& mask) const;
  double cost(const FeatureMask& mask) const;

 private:
  data::Dataset train_;
  data::Dataset validation_;
  CostWeights weights_;
  InnerEvaluator inner_;
};

}  // namespace hhomlp::featsel
