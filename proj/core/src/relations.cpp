#include "recruit/relations.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "recruit/io.hpp"

namespace recruit {

std::string to_string(RelationKind kind) { return kind == RelationKind::Sfor ? "sfor" : "sor"; }

RelationGraph::RelationGraph(RelationKind kind, std::vector<DeviceId> nodes,
                             std::vector<WeightedEdge> edges)
    : kind_(kind), nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  if (!nodes_.empty() && nodes_.back().value < 8 * nodes_.size() + 1024) {
    slot_.assign(nodes_.back().value + 1, 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      slot_[nodes_[i].value] = static_cast<std::uint32_t>(i + 1);
    }
  }
  for (auto& e : edges) {
    if (e.u == e.v) throw ValidationError("relation graph: self-loop on " + to_string(e.u));
    if (!(e.weight > 0.0 && e.weight <= 1.0)) {
      throw ValidationError("relation graph: weight outside (0,1]");
    }
    if (e.v < e.u) std::swap(e.u, e.v);
    if (!contains(e.u) || !contains(e.v)) {
      throw ValidationError("relation graph: edge endpoint is not a node");
    }
  }
  auto by_endpoints = [](const WeightedEdge& l, const WeightedEdge& r) {
    return std::tie(l.u, l.v) < std::tie(r.u, r.v);
  };
  if (!std::is_sorted(edges.begin(), edges.end(), by_endpoints)) {
    std::sort(edges.begin(), edges.end(), by_endpoints);
  }
  // Parallel edges collapse to the strongest link.
  for (const auto& e : edges) {
    if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) {
      edges_.back().weight = std::max(edges_.back().weight, e.weight);
    } else {
      edges_.push_back(e);
    }
  }
}

std::size_t RelationGraph::find(DeviceId id) const {
  if (!slot_.empty()) {
    if (id.value >= slot_.size() || slot_[id.value] == 0) return nodes_.size();
    return slot_[id.value] - 1;
  }
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
  if (it == nodes_.end() || *it != id) return nodes_.size();
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool RelationGraph::contains(DeviceId id) const { return find(id) < nodes_.size(); }

std::size_t RelationGraph::index_of(DeviceId id) const {
  const auto i = find(id);
  if (i == nodes_.size()) throw std::out_of_range(to_string(id) + " not in graph");
  return i;
}

double RelationGraph::weight(DeviceId a, DeviceId b) const {
  if (b < a) std::swap(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b},
                             [](const WeightedEdge& e, const std::pair<DeviceId, DeviceId>& key) {
                               return std::tie(e.u, e.v) < std::tie(key.first, key.second);
                             });
  if (it == edges_.end() || it->u != a || it->v != b) return 0.0;
  return it->weight;
}

std::string RelationGraph::edge_list() const {
  std::string out;
  for (const auto& e : edges_) {
    out += std::to_string(e.u.value) + ' ' + std::to_string(e.v.value) + ' ' +
           io::format_double(e.weight) + '\n';
  }
  return out;
}

namespace {

std::vector<DeviceId> graph_nodes(const CandidatePool& pool, DeviceId requester) {
  auto nodes = pool.members;
  nodes.push_back(requester);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

}  // namespace

RelationGraph build_sfor(const Scenario& scenario, const CandidatePool& pool, DeviceId requester,
                         HopLimit max_hops) {
  if (max_hops < 1) throw ConfigError("build_sfor: max_hops must be >= 1");
  auto nodes = graph_nodes(pool, requester);

  const auto& social = scenario.owner_social();
  std::vector<std::uint32_t> owner(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) owner[i] = scenario.device(nodes[i]).owner.value;

  // Hop rows per distinct owner, computed once each.
  std::map<std::uint32_t, std::vector<std::int32_t>> hops;
  for (auto o : owner) {
    if (o < social.owner_count() && !hops.contains(o)) hops.emplace(o, social.hop_distances(OwnerId(o), max_hops));
  }

  // Nodes are ascending, so edges come out already in canonical order.
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto row = hops.find(owner[i]);
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (owner[i] == owner[j]) {
        edges.push_back({nodes[i], nodes[j], 1.0});
      } else if (row != hops.end() && owner[j] < social.owner_count()) {
        const auto d = row->second[owner[j]];
        if (d >= 1) edges.push_back({nodes[i], nodes[j], 1.0 / static_cast<double>(d)});
      }
    }
  }
  return RelationGraph(RelationKind::Sfor, std::move(nodes), std::move(edges));
}

RelationGraph build_sfor(const Scenario& scenario, const CandidatePool& pool, HopLimit max_hops) {
  return build_sfor(scenario, pool, scenario.task(pool.task).requester, max_hops);
}

std::size_t count_qualifying_meetings(std::span<const ContactEvent> meetings,
                                      const SorThresholds& th) {
  std::size_t count = 0;
  bool anchored = false;
  std::int64_t anchor = 0;
  for (const auto& m : meetings) {
    if (m.end - m.start < th.min_duration_s) continue;
    if (anchored && m.start < anchor + th.min_gap_s) continue;
    ++count;
    anchored = true;
    anchor = m.start;
  }
  return count;
}

RelationGraph build_sor(const Scenario& scenario, const CandidatePool& pool, DeviceId requester,
                        const SorThresholds& th) {
  auto nodes = graph_nodes(pool, requester);
  std::vector<char> member(nodes.empty() ? 0 : nodes.back().value + 1, 0);
  for (auto id : nodes) member[id.value] = 1;
  auto in_graph = [&](DeviceId id) { return id.value < member.size() && member[id.value]; };

  std::vector<ContactEvent> relevant;
  for (auto c : scenario.contact_log()) {
    if (!in_graph(c.a) || !in_graph(c.b)) continue;
    if (c.b < c.a) std::swap(c.a, c.b);
    relevant.push_back(c);
  }
  auto by_pair_then_time = [](const ContactEvent& l, const ContactEvent& r) {
    return std::tie(l.a, l.b, l.start, l.end) < std::tie(r.a, r.b, r.start, r.end);
  };
  if (!std::is_sorted(relevant.begin(), relevant.end(), by_pair_then_time)) {
    std::sort(relevant.begin(), relevant.end(), by_pair_then_time);
  }

  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < relevant.size();) {
    std::size_t j = i;
    while (j < relevant.size() && relevant[j].a == relevant[i].a && relevant[j].b == relevant[i].b) ++j;
    const std::span<const ContactEvent> pair(relevant.data() + i, j - i);
    if (count_qualifying_meetings(pair, th) >= th.min_meetings) {
      edges.push_back({relevant[i].a, relevant[i].b, 1.0});
    }
    i = j;
  }
  return RelationGraph(RelationKind::Sor, std::move(nodes), std::move(edges));
}

RelationGraph build_sor(const Scenario& scenario, const CandidatePool& pool,
                        const SorThresholds& th) {
  return build_sor(scenario, pool, scenario.task(pool.task).requester, th);
}

}  // namespace recruit
