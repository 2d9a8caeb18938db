#pragma once

// Exact rectangular assignment: fill every slot with a distinct worker while
// maximizing the total value. Backs the recruitment ILP, whose constraint
// matrix is a bipartite worker x (task, skill) structure.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace recruit {

struct SlotOption {
  std::uint32_t worker = 0;  // column index; columns are ordered by device id
  double value = 0.0;
};

struct AssignmentProblem {
  std::size_t worker_count = 0;
  std::vector<std::vector<SlotOption>> options;  // one list per slot, in slot order

  std::size_t slot_count() const noexcept { return options.size(); }
};

/// Two solutions whose totals differ by at most this much are treated as tied.
inline constexpr double kTieTolerance = 1e-9;

/// Sum of the chosen option values, accumulated in slot order.
double assignment_value(const AssignmentProblem& problem, std::span<const std::uint32_t> workers);

/// Maximum-value assignment with every slot filled and no worker reused.
/// Among all solutions within kTieTolerance of the optimum, returns the one
/// whose per-slot worker sequence is lexicographically smallest. nullopt when
/// the slots cannot all be filled.
std::optional<std::vector<std::uint32_t>> solve_assignment(const AssignmentProblem& problem);

/// Result of admitting slot groups (tasks) one by one in index order: a group
/// is admitted when all of its slots can be filled together with the slots of
/// the groups admitted before it.
struct GroupAdmission {
  std::vector<bool> admitted;
  std::vector<std::size_t> shortfall;  // unfillable slots of each rejected group
};

GroupAdmission admit_groups(const AssignmentProblem& problem,
                            std::span<const std::size_t> group_of_slot, std::size_t group_count);

}  // namespace recruit
