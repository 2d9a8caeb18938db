#include "recruit/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "recruit/assignment.hpp"

namespace recruit {

void StopRule::validate() const {
  if (!(reject_fraction >= 0.0 && reject_fraction <= 1.0)) {
    throw ConfigError("stop rule: reject_fraction must lie in [0,1]");
  }
  if (max_candidates == 0) throw ConfigError("stop rule: max_candidates must be >= 1");
}

namespace {

constexpr std::size_t kMaxDrawAttempts = 1000;


// Draws one joint worker set; entry k is the worker row chosen for slot k.
// Returns false on a dead end (earlier tasks used up a later task's workers).
bool draw_set(std::span<const EfficiencyMatrix* const> tasks, std::mt19937_64& rng,
              std::vector<char>& used, std::vector<std::size_t>& rows,
              const std::vector<std::vector<std::uint32_t>>& global_id) {
  rows.clear();
  std::fill(used.begin(), used.end(), 0);
  std::vector<std::size_t> free;
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const auto& m = *tasks[k];
    free.clear();
    for (std::size_t w = 0; w < m.workers.size(); ++w) {
      if (!used[global_id[k][w]]) free.push_back(w);
    }
    if (free.size() < m.skills.size()) return false;
    for (std::size_t s = 0; s < m.skills.size(); ++s) {
      std::uniform_int_distribution<std::size_t> pick(s, free.size() - 1);
      std::swap(free[s], free[pick(rng)]);
      rows.push_back(free[s]);
      used[global_id[k][free[s]]] = 1;
    }
  }
  return true;
}

}  // namespace

RecruitmentPlan stochastic_select(std::span<const EfficiencyMatrix> matrices, const StopRule& rule) {
  rule.validate();
  std::vector<const EfficiencyMatrix*> order;
  for (const auto& m : matrices) order.push_back(&m);
  std::sort(order.begin(), order.end(), [](auto* l, auto* r) { return l->task < r->task; });

  // Admission mirrors the exact solver so both report the same infeasible tasks.
  std::vector<DeviceId> columns;
  for (auto* m : order) columns.insert(columns.end(), m->workers.begin(), m->workers.end());
  std::sort(columns.begin(), columns.end());
  columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
  auto column_of = [&](DeviceId id) {
    return static_cast<std::uint32_t>(std::lower_bound(columns.begin(), columns.end(), id) -
                                      columns.begin());
  };
  AssignmentProblem problem;
  problem.worker_count = columns.size();
  std::vector<std::size_t> group;
  std::vector<std::vector<std::uint32_t>> global_id(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (auto w : order[k]->workers) global_id[k].push_back(column_of(w));
    for (std::size_t s = 0; s < order[k]->skills.size(); ++s) {
      std::vector<SlotOption> opts;
      for (auto c : global_id[k]) opts.push_back({c, 0.0});
      problem.options.push_back(std::move(opts));
      group.push_back(k);
    }
  }
  const auto admission = admit_groups(problem, group, order.size());

  RecruitmentPlan plan;
  std::vector<const EfficiencyMatrix*> staffed;
  std::vector<std::vector<std::uint32_t>> staffed_ids;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const bool ok = admission.admitted[k];
    plan.outcomes.push_back({order[k]->task, ok ? TaskStatus::Solved : TaskStatus::Infeasible,
                             admission.shortfall[k]});
    if (ok) {
      staffed.push_back(order[k]);
      staffed_ids.push_back(global_id[k]);
    }
  }
  if (staffed.empty()) {
    if (order.empty()) return plan;
    throw InfeasibleTask(order.front()->task, admission.shortfall.front());
  }

  std::mt19937_64 rng(rule.seed);
  std::vector<char> used(columns.size());
  std::vector<std::size_t> rows, chosen;

  auto objective = [&](const std::vector<std::size_t>& r) {
    double total = 0.0;
    std::size_t slot = 0;
    for (auto* m : staffed) {
      for (std::size_t s = 0; s < m->skills.size(); ++s) total += m->at(r[slot++], s).value;
    }
    return total;
  };
  auto next_set = [&]() {
    for (std::size_t attempt = 0; attempt < kMaxDrawAttempts; ++attempt) {
      if (draw_set(staffed, rng, used, rows, staffed_ids)) return;
    }
    throw Error("stochastic_select: could not draw a feasible worker set");
  };

  const auto reject = std::min(
      rule.max_candidates,
      static_cast<std::size_t>(std::ceil(rule.reject_fraction * static_cast<double>(rule.max_candidates))));
  double best_seen = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rule.max_candidates; ++k) {
    next_set();
    const double value = objective(rows);
    const bool last = k + 1 == rule.max_candidates;
    if (k < reject) {
      best_seen = std::max(best_seen, value);
      if (last) chosen = rows;
      continue;
    }
    if (value > best_seen || last) {
      chosen = rows;
      break;
    }
  }

  std::size_t slot = 0;
  for (auto* m : staffed) {
    for (std::size_t s = 0; s < m->skills.size(); ++s) {
      const auto row = chosen[slot++];
      const auto& e = m->at(row, s);
      plan.assignments.push_back({m->task, m->workers[row], m->skills[s], e});
      plan.objective += e.value;
    }
  }
  return plan;
}

RecruitmentPlan stochastic_select(std::span<const Task> tasks, std::span<const CandidatePool> pools,
                                  const Scenario& scenario, const StopRule& rule, HopLimit max_hops,
                                  NormalizerScope scope) {
  std::vector<EfficiencyMatrix> matrices;
  for (const auto& t : tasks) {
    auto it = std::find_if(pools.begin(), pools.end(), [&](const auto& p) { return p.task == t.id; });
    if (it == pools.end()) throw std::invalid_argument("stochastic_select: no pool for " + to_string(t.id));
    if (scope == NormalizerScope::Reference) {
      const auto norm = mean_normalizers(scenario, t, it->members, kUnboundedHops);
      matrices.push_back(build_efficiency_matrix(scenario, t, it->members, max_hops, norm));
    } else {
      matrices.push_back(build_efficiency_matrix(scenario, t, it->members, max_hops));
    }
  }
  return stochastic_select(matrices, rule);
}

}  // namespace recruit
