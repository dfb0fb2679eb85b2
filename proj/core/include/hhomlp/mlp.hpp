#pragma once

// Feedforward multilayer perceptron with sigmoid activations on every layer,
// and the codec between its parameters and a flat search vector.
//
// Flat layout: all weights layer by layer, then all biases layer by layer.
// Inside a layer's weight block each destination neuron owns a contiguous
// run of its fan-in weights (row-major, rows = destination neurons).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hhomlp/common.hpp"

namespace hhomlp::mlp {

struct MlpTopology {
  std::size_t input_size = 0;
  std::vector<std::size_t> hidden_layers;
  std::size_t output_size = 1;

  void validate() const;

  // [input, hidden..., output]
  std::vector<std::size_t> layer_sizes() const;

  bool operator==(const MlpTopology&) const = default;
};

std::size_t parameter_count(const MlpTopology& topology);

// Weights and biases of one dense layer, weights row-major by destination.
struct DenseLayer {
  std::size_t fan_in = 0;
  std::size_t fan_out = 0;
  RealVector weights;
  RealVector biases;

  bool operator==(const DenseLayer&) const = default;
};

// Flat parameter vector bound to its topology.
class MlpParams {
 public:
  MlpParams(MlpTopology topology, RealVector flat);

  static MlpParams zeros(const MlpTopology& topology);
  static MlpParams from_layers(const MlpTopology& topology,
                               std::span<const DenseLayer> layers);

  const MlpTopology& topology() const noexcept { return topology_; }
  const RealVector& flat() const noexcept { return flat_; }

  std::vector<DenseLayer> layers() const;

  bool operator==(const MlpParams&) const = default;

 private:
  MlpTopology topology_;
  RealVector flat_;
};

double neuron_sum(std::span<const double> inputs,
                  std::span<const double> weights, double bias);

// Logistic function, evaluated without overflow for any finite x.
inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

RealVector forward(const MlpTopology& topology, std::span<const double> flat,
                   std::span<const double> input);

inline RealVector forward(const MlpParams& params,
                          std::span<const double> input) {
  return forward(params.topology(), params.flat(), input);
}

// Reusable scratch buffers for tight evaluation loops.
class Evaluator {
 public:
  Evaluator(const MlpTopology& topology, std::span<const double> flat);

  // Output of a single-output network.
  double output(std::span<const double> input);

  std::span<const double> outputs(std::span<const double> input);

 private:
  const MlpTopology* topology_;
  std::span<const double> flat_;
  std::vector<std::size_t> sizes_;
  RealVector a_;
  RealVector b_;
};

// 1 (intrusion) if output >= threshold, else 0. Single-output only.
int predict_class(std::span<const double> output, double threshold = 0.5);

// Mean squared error of the raw network output against 0/1 labels over a
// row-major matrix whose width is topology.input_size.
double mse_fitness(const MlpTopology& topology, std::span<const double> flat,
                   std::span<const double> rows,
                   std::span<const std::uint8_t> labels);

}  // namespace hhomlp::mlp
