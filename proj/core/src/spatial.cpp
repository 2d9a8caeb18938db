#include "recruit/spatial.hpp"

#include <algorithm>

namespace recruit {

bool CandidatePool::contains(DeviceId id) const {
  return std::binary_search(members.begin(), members.end(), id);
}

CandidatePool filter_by_radius(const Scenario& scenario, const Task& task) {
  CandidatePool pool{task.id, {}};
  for (const auto& d : scenario.devices()) {
    if (d.id == task.requester) continue;
    if (euclidean_distance(d.location, task.location) < task.radius) pool.members.push_back(d.id);
  }
  std::sort(pool.members.begin(), pool.members.end());
  return pool;
}

}  // namespace recruit
