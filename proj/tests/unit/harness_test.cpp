#include <gtest/gtest.h>

#include <cmath>

#include "recruit/harness.hpp"

using namespace recruit;

namespace {

ExperimentConfig small_experiment() {
  ExperimentConfig cfg;
  cfg.generator.n_devices = 250;
  cfg.generator.n_owners = 50;
  cfg.generator.task_count = 5;
  cfg.generator.task_radius = 0.3;
  cfg.generator.contacts.proximity = 0.08;
  cfg.iterations = 3;
  cfg.seed = 11;
  cfg.generator.seed = 11;
  return cfg;
}

}  // namespace

TEST(Harness, ParsesNames) {
  EXPECT_EQ(parse_connectivity("small"), Connectivity::Small);
  EXPECT_EQ(parse_connectivity("full"), Connectivity::Full);
  EXPECT_THROW(parse_connectivity("huge"), ConfigError);
  EXPECT_EQ(parse_algorithm("cd-ilp"), Algorithm::CdIlp);
  EXPECT_EQ(parse_algorithm("stochastic"), Algorithm::Stochastic);
  EXPECT_THROW(parse_algorithm("greedy"), ConfigError);
  EXPECT_EQ(to_string(Connectivity::Medium), "medium");
  EXPECT_EQ(to_string(Algorithm::CdIlp), "cd-ilp");
  EXPECT_EQ(max_hops(Connectivity::Small), 1u);
  EXPECT_EQ(max_hops(Connectivity::Medium), 2u);
  EXPECT_EQ(max_hops(Connectivity::Full), kUnboundedHops);
}

TEST(Harness, ValidatesConfig) {
  auto cfg = small_experiment();
  cfg.iterations = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = small_experiment();
  cfg.radius_sweep = {0.0};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.radius_sweep = {1.2};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = small_experiment();
  cfg.algorithms.clear();
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = small_experiment();
  EXPECT_THROW(run_radius_sweep(cfg), ConfigError);
}

TEST(Harness, SingleIterationSingleAlgorithmGivesOneRow) {
  auto cfg = small_experiment();
  cfg.iterations = 1;
  cfg.algorithms = {Algorithm::CdIlp};
  const auto r = run_comparison(cfg);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].iterations, 1u);
  EXPECT_TRUE(r.first_run.has_value());
}

TEST(Harness, RowsAndCountsReconcile) {
  auto cfg = small_experiment();
  cfg.connectivity = {Connectivity::Small, Connectivity::Full};
  const auto r = run_comparison(cfg);
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_EQ(r.rows[0].connectivity, Connectivity::Small);
  EXPECT_EQ(r.rows[0].algorithm, Algorithm::CdIlp);
  EXPECT_EQ(r.rows[1].algorithm, Algorithm::Stochastic);
  EXPECT_EQ(r.rows[3].connectivity, Connectivity::Full);
  EXPECT_EQ(r.records.size(), 4 * cfg.iterations);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.iterations, cfg.iterations);
    EXPECT_LE(row.solved_iterations, row.iterations);
    std::size_t infeasible = 0;
    for (const auto& rec : r.records) {
      if (rec.algorithm == row.algorithm && rec.connectivity == row.connectivity) {
        infeasible += rec.infeasible_tasks;
        EXPECT_EQ(rec.solved_tasks + rec.infeasible_tasks, cfg.generator.task_count);
        if (rec.solved_tasks > 0) {
          EXPECT_NEAR(rec.objective, rec.skill_term + rec.cost_term + rec.trust_term, 1e-9);
        }
      }
    }
    EXPECT_EQ(row.infeasible_tasks, infeasible);
  }
}

TEST(Harness, SameSeedSameCsv) {
  const auto cfg = small_experiment();
  EXPECT_EQ(metrics_csv(run_comparison(cfg).rows, false), metrics_csv(run_comparison(cfg).rows, false));
}

TEST(Harness, CsvColumns) {
  const auto csv = metrics_csv({MetricsRow{}}, false);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "algorithm,connectivity,radius_fraction,iterations,solved_iterations,infeasible_tasks,"
            "mean_skill_term,mean_cost_term,mean_trust_term,mean_objective,objective_stderr");
  const auto timed = metrics_csv({MetricsRow{}}, true);
  EXPECT_NE(timed.find("mean_runtime_ms"), std::string::npos);
}

TEST(Harness, FullDiagonalSweepMatchesComparisonAtThatRadius) {
  auto cfg = small_experiment();
  cfg.algorithms = {Algorithm::CdIlp};
  cfg.radius_sweep = {1.0};
  const auto sweep = run_radius_sweep(cfg);
  auto cmp_cfg = small_experiment();
  cmp_cfg.algorithms = {Algorithm::CdIlp};
  cmp_cfg.generator.task_radius = kMapDiagonal;
  const auto cmp = run_comparison(cmp_cfg);
  ASSERT_EQ(sweep.rows.size(), 1u);
  EXPECT_EQ(sweep.rows[0].mean_objective, cmp.rows[0].mean_objective);
  EXPECT_EQ(sweep.rows[0].mean_skill_term, cmp.rows[0].mean_skill_term);
  EXPECT_EQ(sweep.rows[0].radius_fraction, 1.0);
}

TEST(Harness, SummarizeUsesSolvedIterationsOnly) {
  std::vector<IterationRecord> recs(3);
  recs[0].solved_tasks = 2;
  recs[0].objective = 1.0;
  recs[1].solved_tasks = 1;
  recs[1].objective = 3.0;
  recs[2].solved_tasks = 0;
  recs[2].infeasible_tasks = 4;
  const auto row = summarize(recs);
  EXPECT_EQ(row.iterations, 3u);
  EXPECT_EQ(row.solved_iterations, 2u);
  EXPECT_EQ(row.infeasible_tasks, 4u);
  EXPECT_EQ(row.mean_objective, 2.0);
  EXPECT_NEAR(row.objective_stderr, std::sqrt(2.0) / std::sqrt(2.0), 1e-12);
}
