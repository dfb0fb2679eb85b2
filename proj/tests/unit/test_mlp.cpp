#include <gtest/gtest.h>

#include <cmath>

#include "hhomlp/mlp.hpp"
#include "oracles.hpp"

using namespace hhomlp;
using namespace hhomlp::mlp;

namespace {

MlpTopology random_topology(Rng& rng, std::size_t max_width) {
  MlpTopology t;
  t.input_size = 1 + rng.index(max_width);
  const std::size_t depth = 1 + rng.index(2);
  for (std::size_t i = 0; i < depth; ++i)
    t.hidden_layers.push_back(1 + rng.index(max_width));
  t.output_size = 1 + rng.index(2);
  return t;
}

RealVector random_vector(Rng& rng, std::size_t n, double lo, double hi) {
  RealVector v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

}  // namespace

TEST(Topology, ParameterCount) {
  EXPECT_EQ(parameter_count({2, {2}, 1}), 9u);
  EXPECT_EQ(parameter_count({1, {1}, 1}), 4u);
  // Default shape on 15 inputs: 15*5+5 + 5*5+5 + 5*1+1.
  EXPECT_EQ(parameter_count({15, {5, 5}, 1}), 116u);
}

TEST(Topology, Validation) {
  EXPECT_THROW((MlpTopology{0, {2}, 1}.validate()), UsageError);
  EXPECT_THROW((MlpTopology{2, {}, 1}.validate()), UsageError);
  EXPECT_THROW((MlpTopology{2, {3, 0}, 1}.validate()), UsageError);
  EXPECT_THROW((MlpTopology{2, {3}, 0}.validate()), UsageError);
  EXPECT_EQ((MlpTopology{3, {4, 5}, 2}.layer_sizes()),
            (std::vector<std::size_t>{3, 4, 5, 2}));
}

TEST(NeuronSum, Examples) {
  EXPECT_DOUBLE_EQ(neuron_sum(RealVector{1, 1}, RealVector{0.5, 0.5}, 0), 1.0);
  EXPECT_DOUBLE_EQ(neuron_sum(RealVector{4, 9}, RealVector{0, 0}, -1.25), -1.25);
  EXPECT_NEAR(neuron_sum(RealVector{2, -1}, RealVector{0.3, 0.4}, 0.1), 0.3,
              1e-15);
  EXPECT_THROW(neuron_sum(RealVector{1}, RealVector{1, 2}, 0), UsageError);
}

TEST(Sigmoid, ValuesAndStability) {
  EXPECT_EQ(sigmoid(0.0), 0.5);
  EXPECT_GT(sigmoid(50.0), 1.0 - 1e-15);
  EXPECT_NEAR(sigmoid(1.0), 0.7310585786300049, 1e-15);
  EXPECT_TRUE(std::isfinite(sigmoid(-700.0)));
  EXPECT_TRUE(std::isfinite(sigmoid(700.0)));
  EXPECT_GT(sigmoid(-700.0), 0.0);
  EXPECT_NEAR(sigmoid(-3.0), oracle::logistic(-3.0), 1e-16);
}

TEST(Forward, ZeroNetworkGivesHalf) {
  const MlpTopology t{3, {4, 2}, 2};
  const auto out = forward(MlpParams::zeros(t), RealVector{1, -2, 3});
  ASSERT_EQ(out.size(), 2u);
  for (double y : out) EXPECT_EQ(y, 0.5);
}

TEST(Forward, TinyNetworkByHand) {
  const MlpTopology t{1, {1}, 1};
  // Layout: w(in->h), w(h->out), b(h), b(out).
  const MlpParams p(t, {1.0, 1.0, 0.0, 0.0});
  const double hidden = 0.5;
  EXPECT_NEAR(forward(p, RealVector{0.0})[0], 1.0 / (1.0 + std::exp(-hidden)),
              1e-15);
  EXPECT_NEAR(forward(p, RealVector{0.0})[0], 0.62246, 1e-5);
}

TEST(Forward, FlatLayoutIsWeightsThenBiases) {
  const MlpTopology t{2, {2}, 1};
  // Hidden neuron 0 sees only input 1, neuron 1 only input 0; output ignores
  // hidden neuron 1. Biases follow every weight.
  RealVector flat{0, 3,  // h0 fan-in
                  5, 0,  // h1 fan-in
                  2, 0,  // out fan-in
                  -1, 0, 0.25};
  const double h0 = oracle::logistic(3 * 0.8 - 1);
  const double want = oracle::logistic(2 * h0 + 0.25);
  EXPECT_NEAR(forward(t, flat, RealVector{0.1, 0.8})[0], want, 1e-15);
}

TEST(Forward, MatchesNestedLoopOracle) {
  Rng rng(17);
  for (int k = 0; k < 100; ++k) {
    const MlpTopology t = random_topology(rng, 4);
    const auto flat = random_vector(rng, parameter_count(t), -3, 3);
    const auto in = random_vector(rng, t.input_size, -2, 2);
    const auto got = forward(t, flat, in);
    const auto want = oracle::mlp_forward(t.layer_sizes(), flat, in);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_NEAR(got[i], want[i], 1e-12);
      EXPECT_GT(got[i], 0.0);
      EXPECT_LT(got[i], 1.0);
    }
  }
}

TEST(Forward, EvaluatorAgreesWithForward) {
  Rng rng(23);
  for (int k = 0; k < 20; ++k) {
    const MlpTopology t = random_topology(rng, 6);
    const auto flat = random_vector(rng, parameter_count(t), -1, 1);
    Evaluator ev(t, flat);
    for (int r = 0; r < 5; ++r) {
      const auto in = random_vector(rng, t.input_size, 0, 1);
      const auto want = forward(t, flat, in);
      const auto got = ev.outputs(in);
      EXPECT_EQ(RealVector(got.begin(), got.end()), want);
    }
  }
}

TEST(Forward, DimensionMismatch) {
  const MlpTopology t{2, {2}, 1};
  EXPECT_THROW(forward(t, RealVector(9, 0.0), RealVector{1}), UsageError);
  EXPECT_THROW(forward(t, RealVector(8, 0.0), RealVector{1, 2}), UsageError);
}

TEST(Params, CodecRoundTrip) {
  Rng rng(29);
  for (int k = 0; k < 50; ++k) {
    const MlpTopology t = random_topology(rng, 5);
    const MlpParams p(t, random_vector(rng, parameter_count(t), -1, 1));
    const auto layers = p.layers();
    ASSERT_EQ(layers.size(), t.hidden_layers.size() + 1);
    EXPECT_EQ(MlpParams::from_layers(t, layers), p);
  }
}

TEST(Params, Validation) {
  const MlpTopology t{1, {1}, 1};
  EXPECT_THROW(MlpParams(t, RealVector(3, 0.0)), UsageError);
  EXPECT_THROW(MlpParams(t, RealVector{0, 0, std::nan(""), 0}), DataError);
  EXPECT_THROW(MlpParams(t, RealVector{0, 0, INFINITY, 0}), DataError);
}

TEST(PredictClass, ThresholdInclusive) {
  EXPECT_EQ(predict_class(RealVector{0.7}), 1);
  EXPECT_EQ(predict_class(RealVector{0.5}), 1);
  EXPECT_EQ(predict_class(RealVector{0.49999}), 0);
  EXPECT_THROW(predict_class(RealVector{0.2, 0.8}), UsageError);
}

TEST(MseFitness, Examples) {
  // One input wired so the output equals sigmoid(b_out); we pick biases that
  // give exact constants.
  const MlpTopology t{1, {1}, 1};
  const RealVector half{0, 0, 0, 0};
  const RealVector rows{0.0, 1.0, 0.0, 1.0};
  const std::vector<std::uint8_t> balanced{0, 1, 1, 0};
  EXPECT_DOUBLE_EQ(mse_fitness(t, half, rows, balanced), 0.25);
  EXPECT_THROW(mse_fitness(t, half, RealVector{}, {}), DataError);
  EXPECT_THROW(mse_fitness({2, {1}, 1}, RealVector(5, 0.0), rows, balanced),
               DataError);
}

TEST(MseFitness, MatchesOracleAndStaysInUnitRange) {
  Rng rng(31);
  const MlpTopology t{3, {4}, 1};
  const auto flat = random_vector(rng, parameter_count(t), -2, 2);
  RealVector rows = random_vector(rng, 30, 0, 1);
  std::vector<std::uint8_t> labels(10);
  std::vector<double> outputs;
  for (std::size_t r = 0; r < 10; ++r) {
    labels[r] = static_cast<std::uint8_t>(rng.index(2));
    outputs.push_back(oracle::mlp_forward(
        t.layer_sizes(), flat, {rows[3 * r], rows[3 * r + 1], rows[3 * r + 2]})[0]);
  }
  const double got = mse_fitness(t, flat, rows, labels);
  EXPECT_NEAR(got, oracle::mse(outputs, labels), 1e-14);
  EXPECT_GE(got, 0.0);
  EXPECT_LE(got, 1.0);
}
