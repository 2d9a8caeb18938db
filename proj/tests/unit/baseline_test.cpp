#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "recruit/baseline.hpp"
#include "recruit/dataset.hpp"

using namespace recruit;

namespace {

EfficiencyMatrix one_skill(std::vector<double> values) {
  EfficiencyMatrix m;
  m.task = TaskId(0);
  m.skills = {SkillId(0)};
  for (std::size_t i = 0; i < values.size(); ++i) {
    m.workers.emplace_back(static_cast<std::uint32_t>(i + 1));
    m.entries.push_back({values[i], values[i], 0.0, 0.0});
  }
  return m;
}

}  // namespace

TEST(StopRule, Validation) {
  EXPECT_NO_THROW(StopRule{}.validate());
  EXPECT_THROW((StopRule{1.5, 10, 0}.validate()), ConfigError);
  EXPECT_THROW((StopRule{-0.1, 10, 0}.validate()), ConfigError);
  EXPECT_THROW((StopRule{0.3, 0, 0}.validate()), ConfigError);
}

TEST(Stochastic, SingleCandidateIsReturnedAsIs) {
  const std::vector<EfficiencyMatrix> ms{one_skill({0.1, 0.5, 0.9})};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto plan = stochastic_select(ms, StopRule{0.0, 1, seed});
    ASSERT_EQ(plan.assignments.size(), 1u);
    EXPECT_TRUE(oracle::validate_plan(plan, ms).empty());
  }
}

TEST(Stochastic, EqualObjectivesStillGiveAValidPlan) {
  const std::vector<EfficiencyMatrix> ms{one_skill({0.4, 0.4, 0.4, 0.4})};
  const auto plan = stochastic_select(ms, StopRule{0.3, 20, 5});
  EXPECT_EQ(plan.objective, 0.4);
  EXPECT_TRUE(check_plan(plan, ms).empty());
}

TEST(Stochastic, MeanFallsShortOfTheOptimum) {
  const std::vector<EfficiencyMatrix> ms{one_skill({0.1, 0.5, 0.9})};
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto plan = stochastic_select(ms, StopRule{0.3, 10, seed});
    EXPECT_LE(plan.objective, 0.9);
    EXPECT_GE(plan.objective, 0.1);
    total += plan.objective;
  }
  EXPECT_LT(total / 1000.0, 0.9);
}

TEST(Stochastic, NeverBeatsTheExactSolverAndIsDeterministic) {
  std::mt19937_64 rng(51);
  oracle::MatrixFuzz fuzz;
  fuzz.coarse_values = false;
  for (int trial = 0; trial < 300; ++trial) {
    const auto ms = oracle::random_matrices(rng, fuzz);
    const auto exact = solve(ms);
    if (exact.solved_count() == 0) {
      EXPECT_THROW(stochastic_select(ms, StopRule{0.3, 30, 1}), InfeasibleTask);
      continue;
    }
    const auto a = stochastic_select(ms, StopRule{0.3, 30, static_cast<std::uint64_t>(trial)});
    EXPECT_EQ(a, stochastic_select(ms, StopRule{0.3, 30, static_cast<std::uint64_t>(trial)}));
    EXPECT_EQ(a.outcomes, exact.outcomes);
    EXPECT_LE(a.objective, exact.objective + 1e-12);
    EXPECT_TRUE(oracle::validate_plan(a, ms).empty());
  }
}

TEST(Stochastic, RunsOnRadiusPools) {
  ScenarioConfig cfg;
  cfg.n_devices = 200;
  cfg.n_owners = 40;
  cfg.task_count = 4;
  cfg.task_radius = 0.4;
  const auto s = generate_scenario(cfg);
  std::vector<CandidatePool> pools;
  for (const auto& t : s.tasks()) pools.push_back(filter_by_radius(s, t));
  const auto plan = stochastic_select(s.tasks(), pools, s, StopRule{}, 2, NormalizerScope::Reference);
  EXPECT_EQ(plan.outcomes.size(), s.tasks().size());
  for (const auto& a : plan.assignments) {
    EXPECT_TRUE(pools[a.task.value].contains(a.worker));
  }
}
