#include "recruit/assignment.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace recruit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Reduced-cost slack used to screen alternative optima. Any solution within
// kTieTolerance of the optimum only uses edges whose reduced cost is at most
// kTieTolerance, so a slightly wider screen is safe.
constexpr double kScreenSlack = 1e-8;

struct Dense {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> cost;  // row-major, +inf = forbidden

  double at(std::size_t i, std::size_t j) const { return cost[i * cols + j]; }
};

struct MinCostResult {
  std::vector<std::uint32_t> col_of_row;
  std::vector<double> u;  // row potentials
  std::vector<double> v;  // column potentials
};

// Shortest augmenting path Hungarian method for rows <= cols, skipping
// forbidden entries. Potentials satisfy u_i + v_j <= c_ij with equality on the
// matching, and v_j = 0 for unmatched columns.
std::optional<MinCostResult> min_cost_assignment(const Dense& d) {
  const auto n = d.rows;
  const auto m = d.cols;
  MinCostResult out;
  if (n == 0) {
    out.v.assign(m, 0.0);
    return out;
  }
  if (n > m) return std::nullopt;

  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const auto i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double c = d.at(i0 - 1, j - 1);
        if (c != kInf) {
          const double cur = c - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 == 0) return std::nullopt;  // no augmenting path
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else if (minv[j] != kInf) {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const auto j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  out.col_of_row.assign(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) out.col_of_row[p[j] - 1] = static_cast<std::uint32_t>(j - 1);
  }
  out.u.assign(u.begin() + 1, u.end());
  out.v.assign(v.begin() + 1, v.end());
  return out;
}

// Cost matrix over slots [first, n) and the columns not in `blocked`.
Dense restrict(const AssignmentProblem& p, std::size_t first, const std::vector<char>& blocked,
               std::vector<std::uint32_t>& col_map) {
  col_map.clear();
  std::vector<std::uint32_t> local(p.worker_count, UINT32_MAX);
  for (std::uint32_t w = 0; w < p.worker_count; ++w) {
    if (!blocked[w]) {
      local[w] = static_cast<std::uint32_t>(col_map.size());
      col_map.push_back(w);
    }
  }
  Dense d;
  d.rows = p.slot_count() - first;
  d.cols = col_map.size();
  d.cost.assign(d.rows * d.cols, kInf);
  for (std::size_t i = first; i < p.slot_count(); ++i) {
    for (const auto& opt : p.options[i]) {
      const auto lw = local[opt.worker];
      if (lw == UINT32_MAX) continue;
      auto& c = d.cost[(i - first) * d.cols + lw];
      c = std::min(c, -opt.value);
    }
  }
  return d;
}

double option_value(const AssignmentProblem& p, std::size_t slot, std::uint32_t worker) {
  double best = -kInf;
  for (const auto& opt : p.options[slot]) {
    if (opt.worker == worker) best = std::max(best, opt.value);
  }
  return best;
}

}  // namespace

double assignment_value(const AssignmentProblem& problem, std::span<const std::uint32_t> workers) {
  double total = 0.0;
  for (std::size_t i = 0; i < workers.size(); ++i) total += option_value(problem, i, workers[i]);
  return total;
}

std::optional<std::vector<std::uint32_t>> solve_assignment(const AssignmentProblem& problem) {
  const auto n = problem.slot_count();
  std::vector<char> blocked(problem.worker_count, 0);
  std::vector<std::uint32_t> col_map;
  const Dense full = restrict(problem, 0, blocked, col_map);
  auto first = min_cost_assignment(full);
  if (!first) return std::nullopt;

  std::vector<std::uint32_t> best = first->col_of_row;  // col_map is identity here
  const double target = assignment_value(problem, best) - kTieTolerance;

  // Greedy lexicographic refinement: fix slots left to right, trying smaller
  // workers that could still belong to a near-optimal solution.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> candidates;
    for (const auto& opt : problem.options[i]) {
      const auto w = opt.worker;
      if (w >= best[i] || blocked[w]) continue;
      const double rc = full.at(i, w) - first->u[i] - first->v[w];
      if (rc <= kTieTolerance + kScreenSlack) candidates.push_back(w);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (auto w : candidates) {
      blocked[w] = 1;
      const Dense rest = restrict(problem, i + 1, blocked, col_map);
      blocked[w] = 0;
      auto sub = min_cost_assignment(rest);
      if (!sub) continue;
      std::vector<std::uint32_t> trial(best.begin(), best.begin() + static_cast<std::ptrdiff_t>(i));
      trial.push_back(w);
      for (auto c : sub->col_of_row) trial.push_back(col_map[c]);
      if (assignment_value(problem, trial) >= target) {
        best = std::move(trial);
        break;
      }
    }
    blocked[best[i]] = 1;
  }
  return best;
}

GroupAdmission admit_groups(const AssignmentProblem& problem,
                            std::span<const std::size_t> group_of_slot, std::size_t group_count) {
  GroupAdmission out;
  out.admitted.assign(group_count, false);
  out.shortfall.assign(group_count, 0);

  std::vector<std::vector<std::size_t>> slots(group_count);
  for (std::size_t i = 0; i < group_of_slot.size(); ++i) slots[group_of_slot[i]].push_back(i);

  constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> slot_of_worker(problem.worker_count, kFree);
  std::vector<char> visited(problem.worker_count);

  // Kuhn augmenting path from slot s.
  std::function<bool(std::size_t)> augment = [&](std::size_t s) {
    for (const auto& opt : problem.options[s]) {
      const auto w = opt.worker;
      if (visited[w]) continue;
      visited[w] = 1;
      if (slot_of_worker[w] == kFree || augment(slot_of_worker[w])) {
        slot_of_worker[w] = s;
        return true;
      }
    }
    return false;
  };

  for (std::size_t g = 0; g < group_count; ++g) {
    const auto saved = slot_of_worker;
    std::size_t matched = 0;
    for (auto s : slots[g]) {
      std::fill(visited.begin(), visited.end(), 0);
      if (augment(s)) ++matched;
    }
    if (matched == slots[g].size()) {
      out.admitted[g] = true;
    } else {
      out.shortfall[g] = slots[g].size() - matched;
      slot_of_worker = saved;
    }
  }
  return out;
}

}  // namespace recruit
