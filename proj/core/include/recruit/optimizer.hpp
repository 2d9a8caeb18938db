#pragma once

// Worker efficiency and the exact recruitment program (P).
//
//   E^t_{w,s} = eta1 * S_{w,s} / S_bar - eta2 * C^t_{w,s} / C_bar + eta3 * O_{t,w} / O_bar
//   C^t_{w,s} = R_{w,s} + dist(loc_w, loc_t) * P
//
// (P) maximizes the total efficiency subject to: each worker holds at most one
// (task, skill) slot across all tasks, and every required (task, skill) slot is
// filled by exactly one worker from that task's trusted set.

#include <span>
#include <string>
#include <vector>

#include "recruit/community.hpp"
#include "recruit/domain.hpp"
#include "recruit/relations.hpp"

namespace recruit {

/// A task cannot be staffed from its worker set.
class InfeasibleTask : public Error {
 public:
  InfeasibleTask(TaskId task, std::size_t shortfall);
  TaskId task() const noexcept { return task_; }
  std::size_t shortfall() const noexcept { return shortfall_; }

 private:
  TaskId task_;
  std::size_t shortfall_;
};

/// Per-task means used to put the three terms on the same scale. A zero mean
/// drops its term.
struct Normalizers {
  double skill = 1.0;
  double cost = 1.0;
  double trust = 1.0;

  friend bool operator==(const Normalizers&, const Normalizers&) = default;
};

/// Population the normalizers are averaged over.
enum class NormalizerScope {
  WorkerSet,  // the worker set the matrix is built on, trust at the run's reach
  Reference,  // the task's radius pool, trust at unbounded reach
};

/// One efficiency value with its signed decomposition: value = skill_term +
/// cost_term + trust_term, and cost_term <= 0.
struct EfficiencyEntry {
  double value = 0.0;
  double skill_term = 0.0;
  double cost_term = 0.0;
  double trust_term = 0.0;

  friend bool operator==(const EfficiencyEntry&, const EfficiencyEntry&) = default;
};

double travel_cost(const Device& worker, const Task& task, SkillId skill, double price);

/// 1 for a shared owner, 1/(1+d) for owners d <= max_hops apart, otherwise 0.
double ownership_trust(const Scenario& scenario, const Device& requester, const Device& worker,
                       HopLimit max_hops);

EfficiencyEntry efficiency(double skill_level, double cost, double trust, const Weights& weights,
                           const Normalizers& norm);
EfficiencyEntry efficiency(const Device& worker, const Task& task, SkillId skill,
                           const Scenario& scenario, const Normalizers& norm, HopLimit max_hops);

/// E^t_{w,s} for every worker of W_t and every required skill of t.
struct EfficiencyMatrix {
  TaskId task;
  std::vector<DeviceId> workers;  // ascending
  std::vector<SkillId> skills;    // required skills, ascending
  std::vector<EfficiencyEntry> entries;  // workers x skills, row-major
  Normalizers normalizers;

  const EfficiencyEntry& at(std::size_t worker_row, std::size_t skill_col) const {
    return entries[worker_row * skills.size() + skill_col];
  }
  /// nullptr when the pair is not part of the matrix.
  const EfficiencyEntry* find(DeviceId worker, SkillId skill) const;
};

/// Builds the matrix over `workers`, dropping those whose ownership trust is
/// below the scenario's trust threshold. Normalizers are the means of S, C and
/// O over the remaining (worker, required skill) pairs.
EfficiencyMatrix build_efficiency_matrix(const Scenario& scenario, const Task& task,
                                         std::span<const DeviceId> workers, HopLimit max_hops);

/// Means of S, C and O over `workers` x required skills, with O evaluated at
/// `trust_reach` hops and no trust threshold applied. Used to score plans on a
/// yardstick that does not depend on the worker set or the owner-network reach.
Normalizers mean_normalizers(const Scenario& scenario, const Task& task,
                             std::span<const DeviceId> workers, HopLimit trust_reach);

/// Same, with caller-supplied normalizers.
EfficiencyMatrix build_efficiency_matrix(const Scenario& scenario, const Task& task,
                                         std::span<const DeviceId> workers, HopLimit max_hops,
                                         const Normalizers& norm);

enum class TaskStatus { Solved, Infeasible };

struct TaskOutcome {
  TaskId task;
  TaskStatus status = TaskStatus::Solved;
  std::size_t shortfall = 0;  // slots that could not be filled

  friend bool operator==(const TaskOutcome&, const TaskOutcome&) = default;
};

struct Assignment {
  TaskId task;
  DeviceId worker;
  SkillId skill;
  EfficiencyEntry efficiency;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct RecruitmentPlan {
  std::vector<Assignment> assignments;  // ordered by (task, skill)
  std::vector<TaskOutcome> outcomes;    // ordered by task
  double objective = 0.0;               // sum of assignment values in order

  const TaskOutcome& outcome(TaskId task) const;
  std::size_t solved_count() const;
  /// Sum of efficiencies for one task's assignments.
  double task_objective(TaskId task) const;
  /// Throws InfeasibleTask for the first infeasible task.
  void require_solved() const;

  /// `task_id,worker_id,skill_id,efficiency,skill_term,cost_term,trust_term`
  std::string to_csv() const;
  std::string to_csv(TaskId task) const;

  friend bool operator==(const RecruitmentPlan&, const RecruitmentPlan&) = default;
};

/// Exact optimum of (P) over precomputed matrices. Tasks are admitted in
/// ascending id order; a task whose slots cannot all be filled alongside the
/// tasks admitted before it is reported Infeasible with its shortfall. Ties
/// within kTieTolerance resolve to the lexicographically smallest sequence of
/// worker ids over slots ordered by (task, skill).
RecruitmentPlan solve(std::span<const EfficiencyMatrix> matrices);

struct SolveOptions {
  HopLimit max_hops = kDefaultSforHops;  // reach of the ownership-trust term
};

RecruitmentPlan solve(std::span<const Task> tasks, std::span<const TrustedSet> trusted,
                      const Scenario& scenario, const SolveOptions& options = {});

/// Machine check of the (P) constraints; returns one message per violation.
std::vector<std::string> check_plan(const RecruitmentPlan& plan,
                                    std::span<const EfficiencyMatrix> matrices);

}  // namespace recruit
