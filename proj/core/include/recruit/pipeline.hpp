#pragma once

// The CD-ILP recruitment pipeline: radius filter -> SFOR/SOR graphs ->
// Louvain -> trusted set W_t -> exact solve, with optional radius growth for
// tasks that come out infeasible.

#include <cstdint>
#include <span>
#include <vector>

#include "recruit/community.hpp"
#include "recruit/optimizer.hpp"
#include "recruit/relations.hpp"
#include "recruit/spatial.hpp"

namespace recruit {

struct PipelineOptions {
  HopLimit max_hops = kDefaultSforHops;  // SFOR reach and ownership-trust reach
  SorThresholds sor;
  std::uint64_t seed = 0;                // Louvain visit order
  double radius_growth = 1.0;            // > 1 enables growth for infeasible tasks
  std::size_t max_growth_rounds = 0;
  NormalizerScope normalizers = NormalizerScope::WorkerSet;
};

/// Intermediate products for one task.
struct TaskTrace {
  Task task;  // with the radius finally used
  CandidatePool pool;
  RelationGraph sfor;
  RelationGraph sor;
  CommunityPartition sfor_communities;
  CommunityPartition sor_communities;
  TrustedSet trusted;
};

struct PipelineResult {
  RecruitmentPlan plan;
  std::vector<TaskTrace> traces;           // one per task, in input order
  std::vector<EfficiencyMatrix> matrices;  // one per task, in input order
  std::size_t growth_rounds = 0;
};

/// Steps 1-4 for a single task.
TaskTrace filter_task(const Scenario& scenario, const Task& task, const PipelineOptions& options);

/// Louvain seed for one task and relation kind, derived from the run seed.
std::uint64_t louvain_seed(std::uint64_t run_seed, TaskId task, RelationKind kind);

PipelineResult run_cd_ilp(const Scenario& scenario, std::span<const Task> tasks,
                          const PipelineOptions& options = {});

/// splitmix64 step; used to derive independent child seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace recruit
