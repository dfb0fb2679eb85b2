#pragma once

// Harris Hawks Optimizer over a box-bounded continuous search space.
//
// The optimizer minimizes. Every move is exposed as a pure function of its
// inputs and the random scalars it consumes, so each update rule can be
// checked with pinned randoms; `optimize` owns the random stream and the
// draw order.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hhomlp/common.hpp"

namespace hhomlp::hho {

class Bounds {
 public:
  Bounds(RealVector lower, RealVector upper);

  // Same [lo, hi] interval in every one of `dim` dimensions.
  static Bounds uniform(std::size_t dim, double lo, double hi);

  std::size_t dim() const noexcept { return lower_.size(); }
  const RealVector& lower() const noexcept { return lower_; }
  const RealVector& upper() const noexcept { return upper_; }

  void clip(std::span<double> x) const;
  bool contains(std::span<const double> x) const;

 private:
  RealVector lower_;
  RealVector upper_;
};

struct SwarmConfig {
  std::size_t population_size = 10;
  std::size_t max_iterations = 30;
  std::uint64_t seed = 0;
  double levy_beta = 1.5;
  // Worker threads for the per-iteration fitness evaluation phase. Results
  // are reduced in hawk-index order, so the thread count never changes the
  // outcome.
  std::size_t eval_threads = 1;

  void validate() const;
};

// Fitness contract: deterministic for a fixed input, lower is better.
class ObjectiveFunction {
 public:
  using Fn = std::function<double(std::span<const double>)>;

  ObjectiveFunction(Fn fn, std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::span<const double> x) const;

 private:
  Fn fn_;
  std::size_t dim_;
};

struct Hawk {
  RealVector position;
  std::optional<double> fitness;
};

struct SwarmState {
  std::vector<Hawk> hawks;
  Hawk prey;  // best so far; fitness is +inf before the first evaluation
  std::size_t iteration = 0;
  Rng rng;
};

SwarmState initialize_swarm(const SwarmConfig& config, const Bounds& bounds,
                            std::size_t dim);

// Escaping energy E = 2 e0 (1 - iter / max_iterations).
double prey_energy(double e0, std::size_t iter, std::size_t max_iterations);

RealVector mean_position(std::span<const Hawk> hawks);

// Random scalars consumed by one exploration step.
struct ExplorationDraws {
  double q = 0.0;
  std::size_t random_index = 0;
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double r4 = 0.0;
};

// Perching move used while |E| >= 1. q >= 0.5 perches relative to a random
// swarm member, q < 0.5 relative to the prey and the swarm mean. The result
// is clipped to `bounds`.
RealVector exploration_move(std::span<const double> hawk,
                            std::span<const Hawk> swarm,
                            std::span<const double> prey,
                            std::span<const double> mean,
                            const Bounds& bounds, const ExplorationDraws& draws);

// Delta H - E |J H_prey - H|, elementwise. Unclipped.
RealVector soft_besiege(std::span<const double> hawk,
                        std::span<const double> prey, double energy,
                        double jump);

// H_prey - E (H_prey - H). Unclipped.
RealVector hard_besiege(std::span<const double> hawk,
                        std::span<const double> prey, double energy);

// Mantegna scale for a Levy-stable step with exponent beta.
double levy_sigma(double beta);

// One Levy step component from standard normal draws u and v.
double levy_step(double u, double v, double beta);

RealVector levy_flight(std::size_t dim, double beta, Rng& rng);

// Rapid-dive candidate pair and the random vectors that built it.
struct DiveDraws {
  RealVector size;  // uniform (0,1) per dimension
  RealVector levy;  // levy_flight(dim)
};

// Progressive rapid dives. `anchor` is the hawk itself for the soft variant
// and the swarm mean for the hard variant:
//   Y = H_prey - E |J H_prey - anchor|,  Z = Y + size * levy.
// Y and Z are clipped, then the first of Y, Z that strictly improves on the
// hawk's current fitness is returned; otherwise the hawk stays put.
struct DiveOutcome {
  RealVector position;
  std::optional<double> fitness;  // known fitness of `position`
  std::size_t evaluations = 0;
};

DiveOutcome rapid_dive(std::span<const double> hawk, double hawk_fitness,
                       std::span<const double> anchor,
                       std::span<const double> prey, double energy,
                       double jump, const DiveDraws& draws,
                       const ObjectiveFunction& objective,
                       const Bounds& bounds);

DiveOutcome soft_besiege_dives(std::span<const double> hawk,
                               double hawk_fitness,
                               std::span<const double> prey, double energy,
                               double jump, const DiveDraws& draws,
                               const ObjectiveFunction& objective,
                               const Bounds& bounds);

DiveOutcome hard_besiege_dives(std::span<const double> hawk,
                               double hawk_fitness,
                               std::span<const double> prey,
                               std::span<const double> mean, double energy,
                               double jump, const DiveDraws& draws,
                               const ObjectiveFunction& objective,
                               const Bounds& bounds);

enum class Phase {
  kPerchOnMember,     // |E| >= 1, q >= 0.5
  kPerchNearPrey,     // |E| >= 1, q < 0.5
  kSoftBesiege,       // r >= 0.5, |E| >= 0.5
  kHardBesiege,       // r >= 0.5, |E| < 0.5
  kSoftBesiegeDives,  // r < 0.5, |E| >= 0.5
  kHardBesiegeDives,  // r < 0.5, |E| < 0.5
};

Phase select_phase(double q, double r, double energy);

struct OptimizeResult {
  RealVector best_position;
  double best_fitness = 0.0;
  // Prey fitness after each iteration's evaluation phase; non-increasing.
  std::vector<double> history;
  std::size_t evaluations = 0;
};

// Per-step observer, used by tests to check swarm-wide invariants.
struct StepObserver {
  std::function<void(std::size_t iter, double energy, Phase phase)> on_move;
  std::function<void(const SwarmState&)> on_iteration_end;
};

OptimizeResult optimize(const ObjectiveFunction& objective,
                        const SwarmConfig& config, const Bounds& bounds,
                        const StepObserver* observer = nullptr);

}  // namespace hhomlp::hho
