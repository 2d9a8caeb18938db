#pragma once

// Optimal-stopping benchmark recruiter. It inspects randomly drawn feasible
// worker sets one after another, always rejects the first fraction of them,
// then accepts the first set whose (P) objective beats every set seen so far
// (or the last set if none does).

#include <cstdint>
#include <span>

#include "recruit/optimizer.hpp"
#include "recruit/spatial.hpp"

namespace recruit {

struct StopRule {
  double reject_fraction = 0.3;
  std::size_t max_candidates = 100;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
};

/// Core rule over precomputed matrices. Each candidate set assigns, task by
/// task in id order, a uniformly drawn injective choice of unused workers to
/// the task's required slots. Tasks that cannot be staffed are reported
/// Infeasible as in solve(); throws InfeasibleTask when no task can be staffed.
RecruitmentPlan stochastic_select(std::span<const EfficiencyMatrix> matrices, const StopRule& rule);

/// Runs on the radius-filtered pools directly (no community step), so both
/// normalizer scopes average over the pool; they differ only in trust reach.
RecruitmentPlan stochastic_select(std::span<const Task> tasks, std::span<const CandidatePool> pools,
                                  const Scenario& scenario, const StopRule& rule,
                                  HopLimit max_hops = kDefaultSforHops,
                                  NormalizerScope scope = NormalizerScope::WorkerSet);

}  // namespace recruit
