#pragma once

#include <vector>

#include "recruit/domain.hpp"

namespace recruit {

/// Devices strictly within the task radius, requester excluded, sorted by id.
struct CandidatePool {
  TaskId task;
  std::vector<DeviceId> members;

  bool contains(DeviceId id) const;
  friend bool operator==(const CandidatePool&, const CandidatePool&) = default;
};

/// Linear O(N) scan over every device in the scenario. `task` need not be one
/// of the scenario's own tasks, so callers can probe alternative radii.
CandidatePool filter_by_radius(const Scenario& scenario, const Task& task);

}  // namespace recruit
