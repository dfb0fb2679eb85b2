#include "hhomlp/hho.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

namespace hhomlp::hho {

Bounds::Bounds(RealVector lower, RealVector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw UsageError("bounds: dimension count must be >= 1");
  if (lower_.size() != upper_.size())
    throw UsageError("bounds: lower and upper differ in length");
  for (std::size_t d = 0; d < lower_.size(); ++d) {
    if (!(lower_[d] < upper_[d]))
      throw UsageError("bounds: lower[" + std::to_string(d) +
                       "] must be < upper");
  }
}

Bounds Bounds::uniform(std::size_t dim, double lo, double hi) {
  return Bounds(RealVector(dim, lo), RealVector(dim, hi));
}

void Bounds::clip(std::span<double> x) const {
  for (std::size_t d = 0; d < x.size(); ++d)
    x[d] = std::clamp(x[d], lower_[d], upper_[d]);
}

bool Bounds::contains(std::span<const double> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t d = 0; d < x.size(); ++d)
    if (!(x[d] >= lower_[d] && x[d] <= upper_[d])) return false;
  return true;
}

void SwarmConfig::validate() const {
  if (population_size < 2)
    throw UsageError("swarm: population_size must be >= 2");
  if (max_iterations < 1)
    throw UsageError("swarm: max_iterations must be >= 1");
  if (!(levy_beta > 0.0 && levy_beta <= 2.0))
    throw UsageError("swarm: levy_beta must lie in (0, 2]");
  if (eval_threads < 1) throw UsageError("swarm: eval_threads must be >= 1");
}

ObjectiveFunction::ObjectiveFunction(Fn fn, std::size_t dim)
    : fn_(std::move(fn)), dim_(dim) {
  if (!fn_) throw UsageError("objective: empty callable");
  if (dim_ == 0) throw UsageError("objective: dimension must be >= 1");
}

double ObjectiveFunction::operator()(std::span<const double> x) const {
  if (x.size() != dim_)
    throw ComputeError("objective: expected " + std::to_string(dim_) +
                       " coordinates, got " + std::to_string(x.size()));
  const double f = fn_(x);
  if (std::isnan(f)) throw ComputeError("objective returned NaN");
  return f;
}

SwarmState initialize_swarm(const SwarmConfig& config, const Bounds& bounds,
                            std::size_t dim) {
  config.validate();
  if (dim == 0) throw UsageError("initialize_swarm: dim must be >= 1");
  if (dim != bounds.dim())
    throw UsageError("initialize_swarm: dim " + std::to_string(dim) +
                     " does not match bounds dimension " +
                     std::to_string(bounds.dim()));

  SwarmState state{.hawks = {},
                   .prey = {RealVector(dim, 0.0),
                            std::numeric_limits<double>::infinity()},
                   .iteration = 0,
                   .rng = Rng(config.seed)};
  state.hawks.reserve(config.population_size);
  for (std::size_t i = 0; i < config.population_size; ++i) {
    Hawk hawk{RealVector(dim), std::nullopt};
    for (std::size_t d = 0; d < dim; ++d)
      hawk.position[d] =
          state.rng.uniform(bounds.lower()[d], bounds.upper()[d]);
    bounds.clip(hawk.position);
    state.hawks.push_back(std::move(hawk));
  }
  return state;
}

double prey_energy(double e0, std::size_t iter, std::size_t max_iterations) {
  const double t = static_cast<double>(iter) /
                   static_cast<double>(max_iterations);
  return 2.0 * e0 * (1.0 - t);
}

RealVector mean_position(std::span<const Hawk> hawks) {
  if (hawks.empty()) throw UsageError("mean_position: empty swarm");
  const std::size_t dim = hawks.front().position.size();
  RealVector mean(dim, 0.0);
  for (const Hawk& h : hawks) {
    if (h.position.size() != dim)
      throw UsageError("mean_position: ragged swarm");
    for (std::size_t d = 0; d < dim; ++d) mean[d] += h.position[d];
  }
  const double n = static_cast<double>(hawks.size());
  for (double& m : mean) m /= n;
  return mean;
}

RealVector exploration_move(std::span<const double> hawk,
                            std::span<const Hawk> swarm,
                            std::span<const double> prey,
                            std::span<const double> mean,
                            const Bounds& bounds,
                            const ExplorationDraws& draws) {
  const std::size_t dim = hawk.size();
  RealVector next(dim);
  if (draws.q >= 0.5) {
    const RealVector& other = swarm[draws.random_index].position;
    for (std::size_t d = 0; d < dim; ++d)
      next[d] = other[d] -
                draws.r1 * std::abs(other[d] - 2.0 * draws.r2 * hawk[d]);
  } else {
    const auto& lo = bounds.lower();
    const auto& hi = bounds.upper();
    for (std::size_t d = 0; d < dim; ++d)
      next[d] = (prey[d] - mean[d]) -
                draws.r3 * (lo[d] + draws.r4 * (hi[d] - lo[d]));
  }
  bounds.clip(next);
  return next;
}

RealVector soft_besiege(std::span<const double> hawk,
                        std::span<const double> prey, double energy,
                        double jump) {
  RealVector next(hawk.size());
  for (std::size_t d = 0; d < hawk.size(); ++d)
    next[d] = (prey[d] - hawk[d]) - energy * std::abs(jump * prey[d] - hawk[d]);
  return next;
}

RealVector hard_besiege(std::span<const double> hawk,
                        std::span<const double> prey, double energy) {
  RealVector next(hawk.size());
  for (std::size_t d = 0; d < hawk.size(); ++d)
    next[d] = prey[d] - energy * (prey[d] - hawk[d]);
  return next;
}

double levy_sigma(double beta) {
  const double num = std::tgamma(1.0 + beta) *
                     std::sin(std::numbers::pi * beta / 2.0);
  const double den = std::tgamma((1.0 + beta) / 2.0) * beta *
                     std::pow(2.0, (beta - 1.0) / 2.0);
  return std::pow(num / den, 1.0 / beta);
}

double levy_step(double u, double v, double beta) {
  return 0.01 * u * levy_sigma(beta) / std::pow(std::abs(v), 1.0 / beta);
}

RealVector levy_flight(std::size_t dim, double beta, Rng& rng) {
  const double sigma = levy_sigma(beta);
  RealVector step(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const double u = rng.normal();
    double v = rng.normal();
    while (v == 0.0) v = rng.normal();
    step[d] = 0.01 * u * sigma / std::pow(std::abs(v), 1.0 / beta);
  }
  return step;
}

DiveOutcome rapid_dive(std::span<const double> hawk, double hawk_fitness,
                       std::span<const double> anchor,
                       std::span<const double> prey, double energy,
                       double jump, const DiveDraws& draws,
                       const ObjectiveFunction& objective,
                       const Bounds& bounds) {
  const std::size_t dim = hawk.size();
  RealVector y(dim);
  for (std::size_t d = 0; d < dim; ++d)
    y[d] = prey[d] - energy * std::abs(jump * prey[d] - anchor[d]);
  RealVector z(dim);
  for (std::size_t d = 0; d < dim; ++d)
    z[d] = y[d] + draws.size[d] * draws.levy[d];
  bounds.clip(y);
  bounds.clip(z);

  const double fy = objective(y);
  if (fy < hawk_fitness) return {std::move(y), fy, 1};
  const double fz = objective(z);
  if (fz < hawk_fitness) return {std::move(z), fz, 2};
  return {RealVector(hawk.begin(), hawk.end()), hawk_fitness, 2};
}

DiveOutcome soft_besiege_dives(std::span<const double> hawk,
                               double hawk_fitness,
                               std::span<const double> prey, double energy,
                               double jump, const DiveDraws& draws,
                               const ObjectiveFunction& objective,
                               const Bounds& bounds) {
  return rapid_dive(hawk, hawk_fitness, hawk, prey, energy, jump, draws,
                    objective, bounds);
}

DiveOutcome hard_besiege_dives(std::span<const double> hawk,
                               double hawk_fitness,
                               std::span<const double> prey,
                               std::span<const double> mean, double energy,
                               double jump, const DiveDraws& draws,
                               const ObjectiveFunction& objective,
                               const Bounds& bounds) {
  return rapid_dive(hawk, hawk_fitness, mean, prey, energy, jump, draws,
                    objective, bounds);
}

Phase select_phase(double q, double r, double energy) {
  const double e = std::abs(energy);
  if (e >= 1.0) return q >= 0.5 ? Phase::kPerchOnMember : Phase::kPerchNearPrey;
  if (r >= 0.5) return e >= 0.5 ? Phase::kSoftBesiege : Phase::kHardBesiege;
  return e >= 0.5 ? Phase::kSoftBesiegeDives : Phase::kHardBesiegeDives;
}

namespace {

void evaluate_swarm(SwarmState& state, const ObjectiveFunction& objective,
                    std::size_t threads, std::size_t& evaluations) {
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < state.hawks.size(); ++i)
    if (!state.hawks[i].fitness) pending.push_back(i);
  evaluations += pending.size();

  std::vector<double> values(pending.size());
  const std::size_t workers = std::min(threads, pending.size());
  if (workers <= 1) {
    for (std::size_t k = 0; k < pending.size(); ++k)
      values[k] = objective(state.hawks[pending[k]].position);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t k = w; k < pending.size(); k += workers)
              values[k] = objective(state.hawks[pending[k]].position);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (std::size_t k = 0; k < pending.size(); ++k)
    state.hawks[pending[k]].fitness = values[k];

  // Strict improvement only: on ties the incumbent prey stays.
  for (const Hawk& h : state.hawks) {
    if (*h.fitness < *state.prey.fitness) state.prey = h;
  }
}

}  // namespace

OptimizeResult optimize(const ObjectiveFunction& objective,
                        const SwarmConfig& config, const Bounds& bounds,
                        const StepObserver* observer) {
  if (objective.dim() != bounds.dim())
    throw UsageError("optimize: objective dimension " +
                     std::to_string(objective.dim()) +
                     " does not match bounds dimension " +
                     std::to_string(bounds.dim()));
  SwarmState state = initialize_swarm(config, bounds, bounds.dim());
  const std::size_t dim = bounds.dim();
  const std::size_t n = state.hawks.size();
  const std::size_t max_iter = config.max_iterations;

  OptimizeResult result;
  result.history.reserve(max_iter);

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    state.iteration = iter;
    evaluate_swarm(state, objective, config.eval_threads, result.evaluations);
    result.history.push_back(*state.prey.fitness);

    const RealVector mean = mean_position(state.hawks);
    const RealVector& prey = state.prey.position;
    Rng& rng = state.rng;

    for (std::size_t i = 0; i < n; ++i) {
      Hawk& hawk = state.hawks[i];
      const double e0 = 2.0 * rng.open_uniform() - 1.0;
      const double jump = 2.0 * (1.0 - rng.open_uniform());
      const double energy = prey_energy(e0, iter, max_iter);

      Phase phase;
      if (std::abs(energy) >= 1.0) {
        ExplorationDraws draws;
        draws.q = rng.uniform();
        draws.random_index = rng.index(n);
        draws.r1 = rng.uniform();
        draws.r2 = rng.uniform();
        draws.r3 = rng.uniform();
        draws.r4 = rng.uniform();
        phase = select_phase(draws.q, 0.0, energy);
        hawk.position = exploration_move(hawk.position, state.hawks, prey,
                                         mean, bounds, draws);
        hawk.fitness.reset();
      } else {
        const double r = rng.uniform();
        phase = select_phase(0.0, r, energy);
        switch (phase) {
          case Phase::kSoftBesiege:
            hawk.position = soft_besiege(hawk.position, prey, energy, jump);
            bounds.clip(hawk.position);
            hawk.fitness.reset();
            break;
          case Phase::kHardBesiege:
            hawk.position = hard_besiege(hawk.position, prey, energy);
            bounds.clip(hawk.position);
            hawk.fitness.reset();
            break;
          case Phase::kSoftBesiegeDives:
          case Phase::kHardBesiegeDives: {
            DiveDraws draws;
            draws.size.resize(dim);
            for (double& s : draws.size) s = rng.open_uniform();
            draws.levy = levy_flight(dim, config.levy_beta, rng);
            DiveOutcome out =
                phase == Phase::kSoftBesiegeDives
                    ? soft_besiege_dives(hawk.position, *hawk.fitness, prey,
                                         energy, jump, draws, objective,
                                         bounds)
                    : hard_besiege_dives(hawk.position, *hawk.fitness, prey,
                                         mean, energy, jump, draws, objective,
                                         bounds);
            result.evaluations += out.evaluations;
            hawk.position = std::move(out.position);
            hawk.fitness = out.fitness;
            break;
          }
          default:
            throw ComputeError("optimize: unreachable exploitation phase");
        }
      }
      if (observer && observer->on_move) observer->on_move(iter, energy, phase);
    }
    if (observer && observer->on_iteration_end)
      observer->on_iteration_end(state);
  }

  result.best_position = state.prey.position;
  result.best_fitness = *state.prey.fitness;
  return result;
}

}  // namespace hhomlp::hho
