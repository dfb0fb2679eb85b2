#include "hhomlp/mlp.hpp"

#include <algorithm>
#include <string>

namespace hhomlp::mlp {

void MlpTopology::validate() const {
  if (input_size == 0) throw UsageError("topology: input_size must be >= 1");
  if (hidden_layers.empty())
    throw UsageError("topology: at least one hidden layer is required");
  for (std::size_t h : hidden_layers)
    if (h == 0) throw UsageError("topology: hidden layer of size 0");
  if (output_size == 0) throw UsageError("topology: output_size must be >= 1");
}

std::vector<std::size_t> MlpTopology::layer_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(hidden_layers.size() + 2);
  sizes.push_back(input_size);
  sizes.insert(sizes.end(), hidden_layers.begin(), hidden_layers.end());
  sizes.push_back(output_size);
  return sizes;
}

std::size_t parameter_count(const MlpTopology& topology) {
  topology.validate();
  const auto sizes = topology.layer_sizes();
  std::size_t count = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l)
    count += sizes[l] * sizes[l + 1] + sizes[l + 1];
  return count;
}

MlpParams::MlpParams(MlpTopology topology, RealVector flat)
    : topology_(std::move(topology)), flat_(std::move(flat)) {
  const std::size_t expected = parameter_count(topology_);
  if (flat_.size() != expected)
    throw UsageError("mlp params: expected " + std::to_string(expected) +
                     " values, got " + std::to_string(flat_.size()));
  for (double v : flat_)
    if (!std::isfinite(v)) throw DataError("mlp params: non-finite value");
}

MlpParams MlpParams::zeros(const MlpTopology& topology) {
  return MlpParams(topology, RealVector(parameter_count(topology), 0.0));
}

MlpParams MlpParams::from_layers(const MlpTopology& topology,
                                 std::span<const DenseLayer> layers) {
  const auto sizes = topology.layer_sizes();
  if (layers.size() + 1 != sizes.size())
    throw UsageError("mlp params: layer count does not match topology");
  RealVector flat;
  flat.reserve(parameter_count(topology));
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const DenseLayer& layer = layers[l];
    if (layer.fan_in != sizes[l] || layer.fan_out != sizes[l + 1] ||
        layer.weights.size() != layer.fan_in * layer.fan_out)
      throw UsageError("mlp params: layer " + std::to_string(l) +
                       " shape does not match topology");
    flat.insert(flat.end(), layer.weights.begin(), layer.weights.end());
  }
  for (const DenseLayer& layer : layers) {
    if (layer.biases.size() != layer.fan_out)
      throw UsageError("mlp params: bias count does not match topology");
    flat.insert(flat.end(), layer.biases.begin(), layer.biases.end());
  }
  return MlpParams(topology, std::move(flat));
}

std::vector<DenseLayer> MlpParams::layers() const {
  const auto sizes = topology_.layer_sizes();
  std::vector<DenseLayer> out;
  std::size_t w = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    DenseLayer layer{sizes[l], sizes[l + 1], {}, {}};
    const std::size_t n = layer.fan_in * layer.fan_out;
    layer.weights.assign(flat_.begin() + w, flat_.begin() + w + n);
    w += n;
    out.push_back(std::move(layer));
  }
  for (DenseLayer& layer : out) {
    layer.biases.assign(flat_.begin() + w, flat_.begin() + w + layer.fan_out);
    w += layer.fan_out;
  }
  return out;
}

double neuron_sum(std::span<const double> inputs,
                  std::span<const double> weights, double bias) {
  if (inputs.size() != weights.size())
    throw UsageError("neuron_sum: " + std::to_string(inputs.size()) +
                     " inputs vs " + std::to_string(weights.size()) +
                     " weights");
  double sum = bias;
  for (std::size_t i = 0; i < inputs.size(); ++i) sum += weights[i] * inputs[i];
  return sum;
}

Evaluator::Evaluator(const MlpTopology& topology, std::span<const double> flat)
    : topology_(&topology), flat_(flat), sizes_(topology.layer_sizes()) {
  if (flat.size() != parameter_count(topology))
    throw UsageError("forward: expected " +
                     std::to_string(parameter_count(topology)) +
                     " parameters, got " + std::to_string(flat.size()));
  std::size_t widest = 0;
  for (std::size_t s : sizes_) widest = std::max(widest, s);
  a_.resize(widest);
  b_.resize(widest);
}

std::span<const double> Evaluator::outputs(std::span<const double> input) {
  if (input.size() != topology_->input_size)
    throw UsageError("forward: expected " +
                     std::to_string(topology_->input_size) +
                     " inputs, got " + std::to_string(input.size()));
  std::size_t weight_offset = 0;
  std::size_t bias_offset = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l)
    bias_offset += sizes_[l] * sizes_[l + 1];

  std::span<const double> in = input;
  RealVector* out = &a_;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const std::size_t fan_in = sizes_[l];
    const std::size_t fan_out = sizes_[l + 1];
    for (std::size_t j = 0; j < fan_out; ++j) {
      const double* w = flat_.data() + weight_offset + j * fan_in;
      double sum = flat_[bias_offset + j];
      for (std::size_t i = 0; i < fan_in; ++i) sum += w[i] * in[i];
      (*out)[j] = sigmoid(sum);
    }
    weight_offset += fan_in * fan_out;
    bias_offset += fan_out;
    in = std::span<const double>(out->data(), fan_out);
    out = (out == &a_) ? &b_ : &a_;
  }
  return in;
}

double Evaluator::output(std::span<const double> input) {
  return outputs(input)[0];
}

RealVector forward(const MlpTopology& topology, std::span<const double> flat,
                   std::span<const double> input) {
  Evaluator eval(topology, flat);
  const auto out = eval.outputs(input);
  return RealVector(out.begin(), out.end());
}

int predict_class(std::span<const double> output, double threshold) {
  if (output.size() != 1)
    throw UsageError("predict_class: binary mode needs a single output, got " +
                     std::to_string(output.size()));
  return output[0] >= threshold ? 1 : 0;
}

double mse_fitness(const MlpTopology& topology, std::span<const double> flat,
                   std::span<const double> rows,
                   std::span<const std::uint8_t> labels) {
  if (labels.empty()) throw DataError("mse_fitness: empty dataset");
  const std::size_t width = topology.input_size;
  if (rows.size() != labels.size() * width)
    throw DataError("mse_fitness: feature width does not match input_size " +
                    std::to_string(width));
  if (topology.output_size != 1)
    throw UsageError("mse_fitness: binary labels need a single output");
  Evaluator eval(topology, flat);
  double total = 0.0;
  for (std::size_t r = 0; r < labels.size(); ++r) {
    const double y = eval.output(rows.subspan(r * width, width));
    const double diff = y - static_cast<double>(labels[r]);
    total += diff * diff;
  }
  return total / static_cast<double>(labels.size());
}

}  // namespace hhomlp::mlp
