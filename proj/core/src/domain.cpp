#include "recruit/domain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace recruit {

namespace {

std::string parse_message(const std::string& file, std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << file;
  if (line > 0) os << ":" << line;
  os << ": " << what;
  return os.str();
}

bool finite(const Location& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace

ParseError::ParseError(const std::string& file, std::size_t line, const std::string& what)
    : Error(parse_message(file, line, what)), line_(line) {}

double euclidean_distance(const Location& p, const Location& q) noexcept {
  return std::hypot(p.x - q.x, p.y - q.y);
}

std::vector<SkillId> Task::required_skills() const {
  std::vector<SkillId> out;
  for (std::size_t s = 0; s < required.size(); ++s) {
    if (required[s] != 0) out.emplace_back(static_cast<std::uint32_t>(s));
  }
  return out;
}

std::string to_string(DeviceId id) { return "device " + std::to_string(id.value); }
std::string to_string(TaskId id) { return "task " + std::to_string(id.value); }

// ---------------------------------------------------------------------------

OwnerGraph::OwnerGraph(std::size_t owner_count, std::vector<OwnerEdge> edges)
    : adjacency_(owner_count) {
  for (auto& e : edges) {
    if (e.a == e.b) {
      throw ValidationError("owner graph: self-loop on owner " + std::to_string(e.a.value));
    }
    if (e.a.value >= owner_count || e.b.value >= owner_count) {
      throw ValidationError("owner graph: edge references owner outside 0.." +
                            std::to_string(owner_count) + ")");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw ValidationError("owner graph: non-positive weight on edge " +
                            std::to_string(e.a.value) + "-" + std::to_string(e.b.value));
    }
    if (e.b < e.a) std::swap(e.a, e.b);
  }
  std::sort(edges.begin(), edges.end(), [](const OwnerEdge& l, const OwnerEdge& r) {
    return std::tie(l.a, l.b) < std::tie(r.a, r.b);
  });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].a == edges[i - 1].a && edges[i].b == edges[i - 1].b) {
      throw ValidationError("owner graph: parallel edge " + std::to_string(edges[i].a.value) +
                            "-" + std::to_string(edges[i].b.value));
    }
  }
  for (const auto& e : edges) {
    adjacency_[e.a.value].push_back(e.b.value);
    adjacency_[e.b.value].push_back(e.a.value);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
  edges_ = std::move(edges);
  if (owner_count <= kHopTableOwners) {
    hops_.reserve(owner_count * owner_count);
    for (std::uint32_t o = 0; o < owner_count; ++o) {
      const auto row = bfs(o, kUnboundedHops);
      hops_.insert(hops_.end(), row.begin(), row.end());
    }
  }
}

std::span<const std::uint32_t> OwnerGraph::neighbors(OwnerId o) const {
  if (o.value >= adjacency_.size()) return {};
  return adjacency_[o.value];
}

bool OwnerGraph::has_edge(OwnerId a, OwnerId b) const {
  auto adj = neighbors(a);
  return std::binary_search(adj.begin(), adj.end(), b.value);
}

std::vector<std::int32_t> OwnerGraph::hop_distances(OwnerId source, HopLimit limit) const {
  const auto n = adjacency_.size();
  if (source.value >= n) return std::vector<std::int32_t>(n, -1);
  if (hops_.empty()) return bfs(source.value, limit);
  std::vector<std::int32_t> dist(hops_.begin() + static_cast<std::ptrdiff_t>(source.value * n),
                                 hops_.begin() + static_cast<std::ptrdiff_t>((source.value + 1) * n));
  for (auto& d : dist) {
    if (d > 0 && static_cast<HopLimit>(d) > limit) d = -1;
  }
  return dist;
}

std::vector<std::int32_t> OwnerGraph::bfs(std::uint32_t source, HopLimit limit) const {
  std::vector<std::int32_t> dist(adjacency_.size(), -1);
  std::deque<std::uint32_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    if (static_cast<HopLimit>(dist[u]) >= limit) continue;
    for (auto v : adjacency_[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

// ---------------------------------------------------------------------------

Scenario::Scenario(std::vector<Device> devices, std::vector<Task> tasks,
                   std::shared_ptr<const OwnerGraph> owner_social,
                   std::shared_ptr<const std::vector<ContactEvent>> contact_log,
                   ScenarioParams params)
    : devices_(std::move(devices)),
      tasks_(std::move(tasks)),
      owner_social_(owner_social ? std::move(owner_social) : std::make_shared<const OwnerGraph>()),
      contact_log_(contact_log ? std::move(contact_log)
                               : std::make_shared<const std::vector<ContactEvent>>()),
      params_(params) {
  device_index_.reserve(devices_.size());
  for (std::size_t i = 0; i < devices_.size(); ++i) {
    if (!device_index_.emplace(devices_[i].id.value, i).second) {
      throw ValidationError(to_string(devices_[i].id) + ": duplicate id");
    }
  }
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    if (!task_index_.emplace(tasks_[i].id.value, i).second) {
      throw ValidationError(to_string(tasks_[i].id) + ": duplicate id");
    }
  }
  validate();
}

Scenario Scenario::with_entities(std::vector<Device> devices, std::vector<Task> tasks) const {
  return Scenario(std::move(devices), std::move(tasks), owner_social_, contact_log_, params_);
}

void Scenario::validate() const {
  const auto& w = params_.weights;
  if (params_.skill_count == 0) throw ValidationError("skill count must be positive");
  if (w.skill < 0.0 || w.cost < 0.0 || w.trust < 0.0) {
    throw ValidationError("weights must be non-negative");
  }
  if (std::abs(w.skill + w.cost + w.trust - 1.0) > kWeightSumTolerance) {
    throw ValidationError("weights must sum to 1");
  }
  if (!(params_.distance_price >= 0.0) || !std::isfinite(params_.distance_price)) {
    throw ValidationError("distance price must be finite and >= 0");
  }
  if (!(params_.trust_threshold >= 0.0 && params_.trust_threshold <= 1.0)) {
    throw ValidationError("trust threshold must lie in [0,1]");
  }

  const auto S = params_.skill_count;
  for (const auto& d : devices_) {
    const auto who = to_string(d.id);
    if (!finite(d.location)) throw ValidationError(who + ": non-finite location");
    if (d.skill_level.size() != S || d.skill_cost.size() != S) {
      throw ValidationError(who + ": expected " + std::to_string(S) + " skill entries");
    }
    for (std::size_t s = 0; s < S; ++s) {
      if (!(d.skill_level[s] >= 0.0 && d.skill_level[s] <= 1.0)) {
        throw ValidationError(who + ": skill_" + std::to_string(s) + " outside [0,1]");
      }
      if (!(d.skill_cost[s] >= 0.0) || !std::isfinite(d.skill_cost[s])) {
        throw ValidationError(who + ": cost_" + std::to_string(s) + " must be finite and >= 0");
      }
    }
  }

  for (const auto& t : tasks_) {
    const auto who = to_string(t.id);
    if (!finite(t.location)) throw ValidationError(who + ": non-finite location");
    if (t.required.size() != S) {
      throw ValidationError(who + ": expected " + std::to_string(S) + " skill indicators");
    }
    if (std::any_of(t.required.begin(), t.required.end(), [](auto q) { return q > 1; })) {
      throw ValidationError(who + ": skill indicators must be 0 or 1");
    }
    if (std::none_of(t.required.begin(), t.required.end(), [](auto q) { return q == 1; })) {
      throw ValidationError(who + ": no required skill");
    }
    if (!(t.radius > 0.0) || !std::isfinite(t.radius)) {
      throw ValidationError(who + ": radius must be finite and > 0");
    }
    if (!contains(t.requester)) {
      throw ValidationError(who + ": requester " + std::to_string(t.requester.value) +
                            " is not a known device");
    }
  }

  for (std::size_t i = 0; i < contact_log_->size(); ++i) {
    const auto& c = (*contact_log_)[i];
    const auto who = "contact #" + std::to_string(i);
    if (c.a == c.b) throw ValidationError(who + ": device meets itself");
    if (!(c.start < c.end)) throw ValidationError(who + ": start must precede end");
    if (!contains(c.a) || !contains(c.b)) throw ValidationError(who + ": unknown device");
  }
}

const Device& Scenario::device(DeviceId id) const { return devices_[device_index(id)]; }

std::size_t Scenario::device_index(DeviceId id) const {
  auto it = device_index_.find(id.value);
  if (it == device_index_.end()) throw std::out_of_range(to_string(id) + " not in scenario");
  return it->second;
}

const Task& Scenario::task(TaskId id) const {
  auto it = task_index_.find(id.value);
  if (it == task_index_.end()) throw std::out_of_range(to_string(id) + " not in scenario");
  return tasks_[it->second];
}

bool operator==(const Scenario& l, const Scenario& r) {
  return l.devices_ == r.devices_ && l.tasks_ == r.tasks_ &&
         *l.owner_social_ == *r.owner_social_ && *l.contact_log_ == *r.contact_log_ &&
         l.params_ == r.params_;
}

}  // namespace recruit
