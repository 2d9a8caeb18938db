#pragma once

// Monte Carlo comparison of the CD-ILP pipeline against the optimal-stopping
// baseline, and the CD-ILP radius sweep.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "recruit/baseline.hpp"
#include "recruit/dataset.hpp"
#include "recruit/pipeline.hpp"

namespace recruit {

/// Owner-network reach: 1 hop, 2 hops (friend of a friend), unbounded.
enum class Connectivity { Small, Medium, Full };

HopLimit max_hops(Connectivity c);
std::string to_string(Connectivity c);
Connectivity parse_connectivity(const std::string& s);

enum class Algorithm { CdIlp, Stochastic };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& s);

struct ExperimentConfig {
  /// When set, the base scenario is loaded from this directory instead of generated.
  std::optional<std::filesystem::path> scenario_dir;
  /// Generator settings; also drive per-iteration re-sampling of skills,
  /// costs and tasks (including the task radius).
  ScenarioConfig generator;
  std::size_t iterations = 1000;
  std::vector<Connectivity> connectivity{Connectivity::Medium};
  std::vector<double> radius_sweep;  // fractions of the map diagonal, in (0,1]
  std::vector<Algorithm> algorithms{Algorithm::CdIlp, Algorithm::Stochastic};
  std::uint64_t seed = 1;
  StopRule stop_rule;
  SorThresholds sor;
  /// Reference keeps objectives comparable across algorithms and reach.
  NormalizerScope normalizers = NormalizerScope::Reference;

  void validate() const;  // throws ConfigError
};

/// Per-iteration measurements of one algorithm in one setting. Term and
/// objective values are means over the iteration's solved tasks of each
/// task's summed efficiency (or term).
struct IterationRecord {
  Algorithm algorithm = Algorithm::CdIlp;
  Connectivity connectivity = Connectivity::Medium;
  double radius_fraction = 0.0;
  std::size_t iteration = 0;
  std::size_t solved_tasks = 0;
  std::size_t infeasible_tasks = 0;
  double skill_term = 0.0;
  double cost_term = 0.0;
  double trust_term = 0.0;
  double objective = 0.0;
  double runtime_ms = 0.0;
};

/// Means are over iterations with at least one solved task.
struct MetricsRow {
  Algorithm algorithm = Algorithm::CdIlp;
  Connectivity connectivity = Connectivity::Medium;
  double radius_fraction = 0.0;
  double mean_skill_term = 0.0;
  double mean_cost_term = 0.0;
  double mean_trust_term = 0.0;
  double mean_objective = 0.0;
  double objective_stderr = 0.0;
  double mean_runtime_ms = 0.0;
  std::size_t iterations = 0;
  std::size_t solved_iterations = 0;
  std::size_t infeasible_tasks = 0;
};

struct ExperimentResult {
  std::vector<MetricsRow> rows;
  std::vector<IterationRecord> records;
  /// CD-ILP run of iteration 0 in the first setting, kept for file export.
  std::optional<PipelineResult> first_run;
};

/// Base scenario for an experiment: loaded or generated from `cfg.generator`.
Scenario base_scenario(const ExperimentConfig& cfg);

/// Row order: for each connectivity scale, one row per algorithm.
ExperimentResult run_comparison(const ExperimentConfig& cfg);

/// CD-ILP only; one row per radius fraction, at the first connectivity scale.
ExperimentResult run_radius_sweep(const ExperimentConfig& cfg);

/// MetricsRow CSV. Wall-clock runtime is only written when `include_runtime`
/// is set, so default outputs are reproducible byte for byte.
std::string metrics_csv(const std::vector<MetricsRow>& rows, bool include_runtime);

/// Reduces records of one (algorithm, setting) group into a row.
MetricsRow summarize(const std::vector<IterationRecord>& records);

}  // namespace recruit
