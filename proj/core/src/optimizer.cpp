#include "recruit/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "recruit/assignment.hpp"
#include "recruit/io.hpp"

namespace recruit {

InfeasibleTask::InfeasibleTask(TaskId task, std::size_t shortfall)
    : Error(to_string(task) + " is infeasible: " + std::to_string(shortfall) +
            " required skill slot(s) cannot be staffed"),
      task_(task),
      shortfall_(shortfall) {}

double travel_cost(const Device& worker, const Task& task, SkillId skill, double price) {
  return worker.skill_cost.at(skill.value) + euclidean_distance(worker.location, task.location) * price;
}

namespace {

double trust_from_distance(std::int32_t hops, HopLimit max_hops) {
  if (hops < 0 || static_cast<HopLimit>(hops) > max_hops) return 0.0;
  return 1.0 / (1.0 + static_cast<double>(hops));
}

double scaled(double weight, double x, double mean) { return mean == 0.0 ? 0.0 : weight * x / mean; }

}  // namespace

double ownership_trust(const Scenario& scenario, const Device& requester, const Device& worker,
                       HopLimit max_hops) {
  if (requester.owner == worker.owner) return 1.0;
  const auto& social = scenario.owner_social();
  if (requester.owner.value >= social.owner_count() || worker.owner.value >= social.owner_count()) {
    return 0.0;
  }
  const auto dist = social.hop_distances(requester.owner, max_hops);
  return trust_from_distance(dist[worker.owner.value], max_hops);
}

EfficiencyEntry efficiency(double skill_level, double cost, double trust, const Weights& weights,
                           const Normalizers& norm) {
  EfficiencyEntry e;
  e.skill_term = scaled(weights.skill, skill_level, norm.skill);
  e.cost_term = -scaled(weights.cost, cost, norm.cost);
  e.trust_term = scaled(weights.trust, trust, norm.trust);
  e.value = e.skill_term + e.cost_term + e.trust_term;
  return e;
}

EfficiencyEntry efficiency(const Device& worker, const Task& task, SkillId skill,
                           const Scenario& scenario, const Normalizers& norm, HopLimit max_hops) {
  const auto& requester = scenario.device(task.requester);
  return efficiency(worker.skill_level.at(skill.value),
                    travel_cost(worker, task, skill, scenario.params().distance_price),
                    ownership_trust(scenario, requester, worker, max_hops), scenario.weights(), norm);
}

const EfficiencyEntry* EfficiencyMatrix::find(DeviceId worker, SkillId skill) const {
  auto w = std::lower_bound(workers.begin(), workers.end(), worker);
  auto s = std::lower_bound(skills.begin(), skills.end(), skill);
  if (w == workers.end() || *w != worker || s == skills.end() || *s != skill) return nullptr;
  return &at(static_cast<std::size_t>(w - workers.begin()), static_cast<std::size_t>(s - skills.begin()));
}

namespace {

struct RawInputs {
  std::vector<DeviceId> workers;
  std::vector<double> trust;               // per worker
  std::vector<double> skill, cost;         // workers x skills
};

RawInputs raw_inputs(const Scenario& scenario, const Task& task, std::span<const DeviceId> workers,
                     std::span<const SkillId> skills, HopLimit max_hops, bool apply_threshold = true) {
  const auto& requester = scenario.device(task.requester);
  const auto& social = scenario.owner_social();
  std::vector<std::int32_t> dist;
  if (requester.owner.value < social.owner_count()) dist = social.hop_distances(requester.owner, max_hops);

  std::vector<DeviceId> sorted(workers.begin(), workers.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  RawInputs in;
  const double threshold = apply_threshold ? scenario.params().trust_threshold : 0.0;
  for (auto id : sorted) {
    if (id == task.requester) continue;
    const auto& w = scenario.device(id);
    double o = 0.0;
    if (w.owner == requester.owner) {
      o = 1.0;
    } else if (!dist.empty() && w.owner.value < dist.size()) {
      o = trust_from_distance(dist[w.owner.value], max_hops);
    }
    if (o < threshold) continue;
    in.workers.push_back(id);
    in.trust.push_back(o);
    for (auto s : skills) {
      in.skill.push_back(w.skill_level.at(s.value));
      in.cost.push_back(travel_cost(w, task, s, scenario.params().distance_price));
    }
  }
  return in;
}

EfficiencyMatrix assemble(const Scenario& scenario, const Task& task, RawInputs in,
                          std::vector<SkillId> skills, const Normalizers& norm) {
  EfficiencyMatrix m;
  m.task = task.id;
  m.normalizers = norm;
  m.skills = std::move(skills);
  const auto S = m.skills.size();
  m.entries.reserve(in.workers.size() * S);
  for (std::size_t w = 0; w < in.workers.size(); ++w) {
    for (std::size_t s = 0; s < S; ++s) {
      m.entries.push_back(efficiency(in.skill[w * S + s], in.cost[w * S + s], in.trust[w],
                                     scenario.weights(), norm));
    }
  }
  m.workers = std::move(in.workers);
  return m;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

EfficiencyMatrix build_efficiency_matrix(const Scenario& scenario, const Task& task,
                                         std::span<const DeviceId> workers, HopLimit max_hops) {
  auto skills = task.required_skills();
  auto in = raw_inputs(scenario, task, workers, skills, max_hops);
  // Mean of O over (w, s) pairs equals its mean over workers.
  const Normalizers norm{mean(in.skill), mean(in.cost), mean(in.trust)};
  return assemble(scenario, task, std::move(in), std::move(skills), norm);
}

Normalizers mean_normalizers(const Scenario& scenario, const Task& task,
                              std::span<const DeviceId> workers, HopLimit trust_reach) {
  const auto skills = task.required_skills();
  const auto in = raw_inputs(scenario, task, workers, skills, trust_reach, false);
  return {mean(in.skill), mean(in.cost), mean(in.trust)};
}

EfficiencyMatrix build_efficiency_matrix(const Scenario& scenario, const Task& task,
                                         std::span<const DeviceId> workers, HopLimit max_hops,
                                         const Normalizers& norm) {
  auto skills = task.required_skills();
  auto in = raw_inputs(scenario, task, workers, skills, max_hops);
  return assemble(scenario, task, std::move(in), std::move(skills), norm);
}

// ---------------------------------------------------------------------------

const TaskOutcome& RecruitmentPlan::outcome(TaskId task) const {
  for (const auto& o : outcomes) {
    if (o.task == task) return o;
  }
  throw std::out_of_range(to_string(task) + " not in plan");
}

std::size_t RecruitmentPlan::solved_count() const {
  return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) {
    return o.status == TaskStatus::Solved;
  }));
}

double RecruitmentPlan::task_objective(TaskId task) const {
  double total = 0.0;
  for (const auto& a : assignments) {
    if (a.task == task) total += a.efficiency.value;
  }
  return total;
}

void RecruitmentPlan::require_solved() const {
  for (const auto& o : outcomes) {
    if (o.status == TaskStatus::Infeasible) throw InfeasibleTask(o.task, o.shortfall);
  }
}

namespace {

std::string plan_csv(const RecruitmentPlan& plan, const TaskId* only) {
  io::CsvWriter out({"task_id", "worker_id", "skill_id", "efficiency", "skill_term", "cost_term",
                     "trust_term"});
  for (const auto& a : plan.assignments) {
    if (only && a.task != *only) continue;
    out.cell(a.task.value).cell(a.worker.value).cell(a.skill.value);
    out.cell(a.efficiency.value).cell(a.efficiency.skill_term).cell(a.efficiency.cost_term);
    out.cell(a.efficiency.trust_term).end_row();
  }
  return out.str();
}

}  // namespace

std::string RecruitmentPlan::to_csv() const { return plan_csv(*this, nullptr); }
std::string RecruitmentPlan::to_csv(TaskId task) const { return plan_csv(*this, &task); }

// ---------------------------------------------------------------------------

RecruitmentPlan solve(std::span<const EfficiencyMatrix> matrices) {
  std::vector<const EfficiencyMatrix*> order;
  for (const auto& m : matrices) order.push_back(&m);
  std::sort(order.begin(), order.end(), [](auto* l, auto* r) { return l->task < r->task; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i]->task == order[i - 1]->task) {
      throw std::invalid_argument("solve: duplicate matrix for " + to_string(order[i]->task));
    }
  }

  std::vector<DeviceId> columns;
  for (auto* m : order) columns.insert(columns.end(), m->workers.begin(), m->workers.end());
  std::sort(columns.begin(), columns.end());
  columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
  auto column_of = [&](DeviceId id) {
    return static_cast<std::uint32_t>(std::lower_bound(columns.begin(), columns.end(), id) -
                                      columns.begin());
  };

  // One slot per (task, required skill), in (task, skill) order.
  struct SlotRef {
    std::size_t matrix;
    std::size_t skill_col;
  };
  AssignmentProblem all;
  all.worker_count = columns.size();
  std::vector<SlotRef> refs;
  std::vector<std::size_t> group;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& m = *order[k];
    for (std::size_t s = 0; s < m.skills.size(); ++s) {
      std::vector<SlotOption> opts;
      opts.reserve(m.workers.size());
      for (std::size_t w = 0; w < m.workers.size(); ++w) {
        opts.push_back({column_of(m.workers[w]), m.at(w, s).value});
      }
      all.options.push_back(std::move(opts));
      refs.push_back({k, s});
      group.push_back(k);
    }
  }

  const auto admission = admit_groups(all, group, order.size());

  AssignmentProblem admitted;
  admitted.worker_count = all.worker_count;
  std::vector<SlotRef> admitted_refs;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (!admission.admitted[group[i]]) continue;
    admitted.options.push_back(std::move(all.options[i]));
    admitted_refs.push_back(refs[i]);
  }

  RecruitmentPlan plan;
  for (std::size_t k = 0; k < order.size(); ++k) {
    plan.outcomes.push_back({order[k]->task,
                             admission.admitted[k] ? TaskStatus::Solved : TaskStatus::Infeasible,
                             admission.shortfall[k]});
  }

  const auto chosen = solve_assignment(admitted);
  if (!chosen) throw Error("solve: admitted tasks became unassignable");  // admission guarantees this
  for (std::size_t i = 0; i < chosen->size(); ++i) {
    const auto& ref = admitted_refs[i];
    const auto& m = *order[ref.matrix];
    const auto worker = columns[(*chosen)[i]];
    const auto row = static_cast<std::size_t>(
        std::lower_bound(m.workers.begin(), m.workers.end(), worker) - m.workers.begin());
    const auto& entry = m.at(row, ref.skill_col);
    plan.assignments.push_back({m.task, worker, m.skills[ref.skill_col], entry});
    plan.objective += entry.value;
  }
  return plan;
}

RecruitmentPlan solve(std::span<const Task> tasks, std::span<const TrustedSet> trusted,
                      const Scenario& scenario, const SolveOptions& options) {
  std::vector<EfficiencyMatrix> matrices;
  matrices.reserve(tasks.size());
  for (const auto& t : tasks) {
    auto it = std::find_if(trusted.begin(), trusted.end(), [&](const auto& ts) { return ts.task == t.id; });
    if (it == trusted.end()) throw std::invalid_argument("solve: no trusted set for " + to_string(t.id));
    matrices.push_back(build_efficiency_matrix(scenario, t, it->workers, options.max_hops));
  }
  return solve(matrices);
}

std::vector<std::string> check_plan(const RecruitmentPlan& plan,
                                    std::span<const EfficiencyMatrix> matrices) {
  std::vector<std::string> issues;
  std::map<TaskId, const EfficiencyMatrix*> by_task;
  for (const auto& m : matrices) by_task[m.task] = &m;

  std::set<DeviceId> used;
  std::map<std::pair<TaskId, SkillId>, std::size_t> filled;
  double total = 0.0;
  for (const auto& a : plan.assignments) {
    const auto where = to_string(a.task) + "/" + to_string(a.worker) + "/skill " +
                       std::to_string(a.skill.value);
    if (!used.insert(a.worker).second) issues.push_back(where + ": worker assigned more than once");
    auto it = by_task.find(a.task);
    if (it == by_task.end()) {
      issues.push_back(where + ": unknown task");
      continue;
    }
    const auto* entry = it->second->find(a.worker, a.skill);
    if (!entry) {
      issues.push_back(where + ": skill not required or worker not eligible");
      continue;
    }
    if (!(*entry == a.efficiency)) issues.push_back(where + ": efficiency differs from matrix");
    ++filled[{a.task, a.skill}];
    total += a.efficiency.value;
  }

  for (const auto& [task, m] : by_task) {
    const TaskOutcome* outcome = nullptr;
    for (const auto& o : plan.outcomes) {
      if (o.task == task) outcome = &o;
    }
    if (!outcome) {
      issues.push_back(to_string(task) + ": missing outcome");
      continue;
    }
    for (auto s : m->skills) {
      const auto n = filled.count({task, s}) ? filled[{task, s}] : 0;
      const std::size_t want = outcome->status == TaskStatus::Solved ? 1 : 0;
      if (n != want) {
        issues.push_back(to_string(task) + "/skill " + std::to_string(s.value) + ": filled " +
                         std::to_string(n) + " times, expected " + std::to_string(want));
      }
    }
  }
  if (std::abs(total - plan.objective) > 1e-9) issues.push_back("objective differs from assignment sum");
  return issues;
}

}  // namespace recruit
