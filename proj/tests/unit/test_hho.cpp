#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "hhomlp/hho.hpp"
#include "oracles.hpp"

using namespace hhomlp;
using namespace hhomlp::hho;

namespace {

ObjectiveFunction sphere(std::size_t dim) {
  return ObjectiveFunction(
      [](std::span<const double> x) {
        return oracle::sphere(std::vector<double>(x.begin(), x.end()));
      },
      dim);
}

}  // namespace

TEST(Bounds, RejectsDegenerateAndInverted) {
  EXPECT_THROW(Bounds({1.0}, {1.0}), UsageError);
  EXPECT_THROW(Bounds({2.0}, {1.0}), UsageError);
  EXPECT_THROW(Bounds({0.0, 0.0}, {1.0}), UsageError);
  EXPECT_THROW(Bounds({}, {}), UsageError);
}

TEST(Bounds, ClipAndContains) {
  const Bounds b({-1.0, 0.0}, {1.0, 2.0});
  RealVector x{-3.0, 5.0};
  EXPECT_FALSE(b.contains(x));
  b.clip(x);
  EXPECT_EQ(x, (RealVector{-1.0, 2.0}));
  EXPECT_TRUE(b.contains(x));
}

TEST(InitializeSwarm, WithinBoundsAndReproducible) {
  SwarmConfig cfg;
  cfg.population_size = 2;
  cfg.seed = 5;
  const auto b = Bounds::uniform(1, 0.0, 1.0);
  const auto s1 = initialize_swarm(cfg, b, 1);
  const auto s2 = initialize_swarm(cfg, b, 1);
  ASSERT_EQ(s1.hawks.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_TRUE(b.contains(s1.hawks[i].position));
    EXPECT_EQ(s1.hawks[i].position, s2.hawks[i].position);
  }
}

TEST(InitializeSwarm, SameSeedSamePositions) {
  SwarmConfig cfg;
  cfg.population_size = 10;
  cfg.seed = 42;
  const auto b = Bounds::uniform(5, -3.0, 3.0);
  const auto a = initialize_swarm(cfg, b, 5);
  const auto c = initialize_swarm(cfg, b, 5);
  for (std::size_t i = 0; i < 10; ++i)
    EXPECT_EQ(a.hawks[i].position, c.hawks[i].position);
}

TEST(InitializeSwarm, RejectsBadDimension) {
  SwarmConfig cfg;
  EXPECT_THROW(initialize_swarm(cfg, Bounds::uniform(2, 0, 1), 0), UsageError);
  EXPECT_THROW(initialize_swarm(cfg, Bounds::uniform(2, 0, 1), 3), UsageError);
}

TEST(SwarmConfig, Validation) {
  SwarmConfig cfg;
  cfg.population_size = 1;
  EXPECT_THROW(cfg.validate(), UsageError);
  cfg = {};
  cfg.max_iterations = 0;
  EXPECT_THROW(cfg.validate(), UsageError);
  cfg = {};
  cfg.levy_beta = 2.5;
  EXPECT_THROW(cfg.validate(), UsageError);
}

TEST(PreyEnergy, Examples) {
  EXPECT_DOUBLE_EQ(prey_energy(0.5, 0, 30), 1.0);
  EXPECT_DOUBLE_EQ(prey_energy(0.9, 30, 30), 0.0);
  EXPECT_DOUBLE_EQ(prey_energy(-0.5, 15, 30), -0.5);
}

TEST(PreyEnergy, EnvelopeHoldsAcrossFuzz) {
  Rng rng(3);
  for (int k = 0; k < 20000; ++k) {
    const std::size_t T = 1 + rng.index(1000);
    const std::size_t t = rng.index(T + 1);
    const double e0 = 2.0 * rng.open_uniform() - 1.0;
    const double env = 2.0 * (1.0 - static_cast<double>(t) / T);
    EXPECT_LE(std::abs(prey_energy(e0, t, T)), env + 1e-15);
  }
}

TEST(MeanPosition, Examples) {
  EXPECT_EQ(mean_position(std::vector<Hawk>{{{0, 0}, {}}, {{2, 2}, {}}}),
            (RealVector{1, 1}));
  EXPECT_EQ(mean_position(std::vector<Hawk>{{{3.5}, {}}}), (RealVector{3.5}));
  EXPECT_EQ(mean_position(std::vector<Hawk>{
                {{1, 2}, {}}, {{3, 4}, {}}, {{5, 6}, {}}}),
            (RealVector{3, 4}));
  EXPECT_THROW(mean_position(std::vector<Hawk>{}), UsageError);
}

TEST(ExplorationMove, RandomMemberFixedPoint) {
  const RealVector h{0.3, -0.7};
  const std::vector<Hawk> swarm{{h, {}}};
  ExplorationDraws d;
  d.q = 0.9;
  d.random_index = 0;
  d.r1 = 0.37;
  d.r2 = 0.5;
  const auto b = Bounds::uniform(2, -1, 1);
  EXPECT_EQ(exploration_move(h, swarm, h, h, b, d), h);
}

TEST(ExplorationMove, PreyMeanBranch) {
  const auto b = Bounds::uniform(2, 0.0, 10.0);
  const std::vector<Hawk> swarm{{{5, 5}, {}}};
  ExplorationDraws d;
  d.q = 0.1;
  d.r3 = 0.0;
  EXPECT_EQ(exploration_move(RealVector{5, 5}, swarm, RealVector{4, 4},
                             RealVector{1, 1}, b, d),
            (RealVector{3, 3}));
  d.r3 = 1.0;
  d.r4 = 0.0;
  // H_prey - H_m - (LoBo + 0) with LoBo = 0.
  EXPECT_EQ(exploration_move(RealVector{5, 5}, swarm, RealVector{4, 4},
                             RealVector{1, 1}, b, d),
            (RealVector{3, 3}));
}

TEST(ExplorationMove, ResultIsClipped) {
  const auto b = Bounds::uniform(1, 0.0, 1.0);
  const std::vector<Hawk> swarm{{{1.0}, {}}};
  ExplorationDraws d;
  d.q = 0.1;
  d.r3 = 1.0;
  d.r4 = 1.0;
  const auto x = exploration_move(RealVector{0.5}, swarm, RealVector{0.0},
                                  RealVector{1.0}, b, d);
  EXPECT_EQ(x, RealVector{0.0});
}

TEST(SoftBesiege, Examples) {
  EXPECT_EQ(soft_besiege(RealVector{0}, RealVector{0}, 0.8, 1.3),
            RealVector{0});
  EXPECT_DOUBLE_EQ(soft_besiege(RealVector{0}, RealVector{1}, 0.5, 1.0)[0], 0.5);
  EXPECT_EQ(soft_besiege(RealVector{1, 2}, RealVector{4, -1}, 0.0, 1.7),
            (RealVector{3, -3}));
}

TEST(HardBesiege, Examples) {
  EXPECT_EQ(hard_besiege(RealVector{7, -3}, RealVector{1, 2}, 0.0),
            (RealVector{1, 2}));
  EXPECT_DOUBLE_EQ(hard_besiege(RealVector{0}, RealVector{2}, 0.4)[0], 1.2);
  EXPECT_EQ(hard_besiege(RealVector{2.5}, RealVector{2.5}, 0.3),
            RealVector{2.5});
}

TEST(Levy, SigmaMatchesGammaOracle) {
  const double expected = oracle::levy_sigma(1.5);
  EXPECT_NEAR(expected, 0.696575, 1e-6);
  EXPECT_LE(std::abs(levy_sigma(1.5) - expected) / expected, 1e-9);
  for (double beta : {0.5, 1.0, 1.2, 1.9, 2.0})
    EXPECT_NEAR(levy_sigma(beta), oracle::levy_sigma(beta),
                1e-9 * oracle::levy_sigma(beta));
}

TEST(Levy, ZeroNumeratorGivesZeroStep) {
  EXPECT_EQ(levy_step(0.0, 0.7, 1.5), 0.0);
  EXPECT_DOUBLE_EQ(levy_step(1.0, 1.0, 1.5), 0.01 * oracle::levy_sigma(1.5));
}

TEST(Levy, SignBalance) {
  Rng rng(11);
  const auto steps = levy_flight(100000, 1.5, rng);
  const auto pos = std::count_if(steps.begin(), steps.end(),
                                 [](double s) { return s > 0.0; });
  EXPECT_NEAR(static_cast<double>(pos) / steps.size(), 0.5, 0.01);
}

TEST(RapidDive, AcceptsYFirst) {
  const auto obj = sphere(1);
  const auto b = Bounds::uniform(1, -10, 10);
  // Y = 1 - 0.5 * |1 - 4| = -0.5, F(Y) = 0.25 < F(H) = 16.
  DiveDraws d{{0.5}, {100.0}};
  const auto out = soft_besiege_dives(RealVector{4}, 16.0, RealVector{1}, 0.5,
                                      1.0, d, obj, b);
  EXPECT_DOUBLE_EQ(out.position[0], -0.5);
  EXPECT_DOUBLE_EQ(*out.fitness, 0.25);
  EXPECT_EQ(out.evaluations, 1u);
}

TEST(RapidDive, FallsBackToZ) {
  const auto obj = sphere(1);
  const auto b = Bounds::uniform(1, -10, 10);
  // H = 1 (F=1). Y = 2 - 0.5 * |2 - 1| = 1.5 (F=2.25), Z = 1.5 + 1 * -1.4 = 0.1.
  DiveDraws d{{1.0}, {-1.4}};
  const auto out = soft_besiege_dives(RealVector{1}, 1.0, RealVector{2}, 0.5,
                                      1.0, d, obj, b);
  EXPECT_NEAR(out.position[0], 0.1, 1e-15);
  EXPECT_EQ(out.evaluations, 2u);
}

TEST(RapidDive, KeepsHawkWhenNeitherImproves) {
  const auto obj = sphere(1);
  const auto b = Bounds::uniform(1, -10, 10);
  DiveDraws d{{1.0}, {5.0}};
  const auto out = soft_besiege_dives(RealVector{1}, 1.0, RealVector{2}, 0.5,
                                      1.0, d, obj, b);
  EXPECT_EQ(out.position, RealVector{1});
  EXPECT_EQ(*out.fitness, 1.0);
}

TEST(RapidDive, HardVariantUsesMean) {
  const auto obj = sphere(1);
  const auto b = Bounds::uniform(1, -10, 10);
  DiveDraws d{{0.0}, {0.0}};
  const auto out = hard_besiege_dives(RealVector{5}, 25.0, RealVector{1},
                                      RealVector{0}, 0.4, 1.0, d, obj, b);
  EXPECT_DOUBLE_EQ(out.position[0], 0.6);
  // Collapsed swarm: Y is the prey itself.
  const auto same = hard_besiege_dives(RealVector{5}, 25.0, RealVector{1},
                                       RealVector{1}, 0.3, 1.0, d, obj, b);
  EXPECT_DOUBLE_EQ(same.position[0], 1.0);
}

TEST(SelectPhase, CoversAllBranches) {
  EXPECT_EQ(select_phase(0.5, 0.0, 1.0), Phase::kPerchOnMember);
  EXPECT_EQ(select_phase(0.49, 0.0, -1.5), Phase::kPerchNearPrey);
  EXPECT_EQ(select_phase(0.0, 0.5, 0.5), Phase::kSoftBesiege);
  EXPECT_EQ(select_phase(0.0, 0.7, -0.2), Phase::kHardBesiege);
  EXPECT_EQ(select_phase(0.0, 0.2, 0.9), Phase::kSoftBesiegeDives);
  EXPECT_EQ(select_phase(0.0, 0.49, 0.49), Phase::kHardBesiegeDives);
}

TEST(SelectPhase, FuzzAgreesWithRuleTable) {
  Rng rng(9);
  for (int k = 0; k < 100000; ++k) {
    const double q = rng.uniform(), r = rng.uniform();
    const double e = rng.uniform(-2.0, 2.0);
    Phase want;
    if (std::abs(e) >= 1.0)
      want = q >= 0.5 ? Phase::kPerchOnMember : Phase::kPerchNearPrey;
    else if (r >= 0.5 && std::abs(e) >= 0.5)
      want = Phase::kSoftBesiege;
    else if (r >= 0.5)
      want = Phase::kHardBesiege;
    else if (std::abs(e) >= 0.5)
      want = Phase::kSoftBesiegeDives;
    else
      want = Phase::kHardBesiegeDives;
    ASSERT_EQ(select_phase(q, r, e), want);
  }
}

TEST(Optimize, ObserverSeesEveryPhaseAndContainment) {
  SwarmConfig cfg;
  cfg.population_size = 20;
  cfg.max_iterations = 60;
  cfg.seed = 1;
  const auto b = Bounds::uniform(4, -5.0, 5.0);
  std::map<Phase, int> seen;
  bool contained = true;
  StepObserver obs;
  obs.on_move = [&](std::size_t, double, Phase p) { ++seen[p]; };
  obs.on_iteration_end = [&](const SwarmState& s) {
    for (const auto& h : s.hawks) contained = contained && b.contains(h.position);
  };
  optimize(sphere(4), cfg, b, &obs);
  EXPECT_TRUE(contained);
  EXPECT_EQ(seen.size(), 6u);
}

TEST(Optimize, HistoryNonIncreasingAndDeterministic) {
  SwarmConfig cfg;
  cfg.population_size = 10;
  cfg.max_iterations = 50;
  cfg.seed = 42;
  const auto b = Bounds::uniform(5, -10, 10);
  const auto a = optimize(sphere(5), cfg, b);
  const auto c = optimize(sphere(5), cfg, b);
  ASSERT_EQ(a.history.size(), 50u);
  for (std::size_t i = 1; i < a.history.size(); ++i)
    EXPECT_LE(a.history[i], a.history[i - 1]);
  EXPECT_EQ(a.history, c.history);
  EXPECT_EQ(a.best_position, c.best_position);
  EXPECT_LE(a.best_fitness, a.history.back());
}

TEST(Optimize, ThreadedEvaluationMatchesSerial) {
  SwarmConfig cfg;
  cfg.population_size = 12;
  cfg.max_iterations = 40;
  cfg.seed = 8;
  const auto b = Bounds::uniform(6, -10, 10);
  const auto serial = optimize(sphere(6), cfg, b);
  cfg.eval_threads = 4;
  const auto threaded = optimize(sphere(6), cfg, b);
  EXPECT_EQ(serial.history, threaded.history);
  EXPECT_EQ(serial.best_position, threaded.best_position);
}

TEST(Optimize, ConstantObjective) {
  SwarmConfig cfg;
  const ObjectiveFunction flat([](std::span<const double>) { return 3.0; }, 3);
  const auto r = optimize(flat, cfg, Bounds::uniform(3, -1, 1));
  EXPECT_EQ(r.best_fitness, 3.0);
  for (double h : r.history) EXPECT_EQ(h, 3.0);
}

TEST(Optimize, SingleIteration) {
  SwarmConfig cfg;
  cfg.max_iterations = 1;
  const auto r = optimize(sphere(2), cfg, Bounds::uniform(2, -1, 1));
  EXPECT_EQ(r.history.size(), 1u);
  EXPECT_GE(r.evaluations, cfg.population_size);
}

TEST(Optimize, SphereConverges) {
  SwarmConfig cfg;
  cfg.population_size = 30;
  cfg.max_iterations = 200;
  cfg.seed = 4;
  const auto r = optimize(sphere(10), cfg, Bounds::uniform(10, -10, 10));
  EXPECT_LT(r.best_fitness, 1e-3 * r.history.front());
}

TEST(Optimize, ErrorsPropagate) {
  SwarmConfig cfg;
  EXPECT_THROW(optimize(sphere(3), cfg, Bounds::uniform(2, -1, 1)), UsageError);
  const ObjectiveFunction nan_obj(
      [](std::span<const double>) { return std::nan(""); }, 2);
  EXPECT_THROW(optimize(nan_obj, cfg, Bounds::uniform(2, -1, 1)), ComputeError);
  const ObjectiveFunction boom(
      [](std::span<const double>) -> double { throw DataError("boom"); }, 2);
  EXPECT_THROW(optimize(boom, cfg, Bounds::uniform(2, -1, 1)), DataError);
}
