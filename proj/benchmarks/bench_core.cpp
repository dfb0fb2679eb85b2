#include <benchmark/benchmark.h>

#include "hhomlp/hho.hpp"
#include "hhomlp/mlp.hpp"
#include "hhomlp/synthetic.hpp"

using namespace hhomlp;

namespace {

RealVector random_vector(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  RealVector v(n);
  for (double& x : v) x = rng.uniform(-1, 1);
  return v;
}

void BM_Forward(benchmark::State& state) {
  const auto inputs = static_cast<std::size_t>(state.range(0));
  const mlp::MlpTopology t{inputs, {5, 5}, 1};
  const auto flat = random_vector(mlp::parameter_count(t), 1);
  const auto in = random_vector(inputs, 2);
  mlp::Evaluator ev(t, flat);
  for (auto _ : state) benchmark::DoNotOptimize(ev.output(in));
}
BENCHMARK(BM_Forward)->Arg(2)->Arg(41)->Arg(122);

void BM_MseFitness(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto d = synthetic::one_informative(rows, 41, 3);
  const mlp::MlpTopology t{41, {5, 5}, 1};
  const auto flat = random_vector(mlp::parameter_count(t), 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(mlp::mse_fitness(t, flat, d.values, d.labels));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows));
}
BENCHMARK(BM_MseFitness)->Arg(1000)->Arg(10000);

void BM_SwarmSphere(benchmark::State& state) {
  const hho::ObjectiveFunction sphere(
      [](std::span<const double> x) {
        double s = 0;
        for (double v : x) s += v * v;
        return s;
      },
      10);
  const auto bounds = hho::Bounds::uniform(10, -10.0, 10.0);
  hho::SwarmConfig cfg;
  cfg.population_size = static_cast<std::size_t>(state.range(0));
  cfg.max_iterations = 100;
  for (auto _ : state) benchmark::DoNotOptimize(hho::optimize(sphere, cfg, bounds));
}
BENCHMARK(BM_SwarmSphere)->Arg(10)->Arg(30);

}  // namespace

// The distro's static benchmark_main carries LTO bytecode from another
// compiler release, so the shared library plus this macro is used instead.
BENCHMARK_MAIN();
