#pragma once

// SFOR / SOR relation graphs over a task's candidate pool plus its requester.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "recruit/domain.hpp"
#include "recruit/spatial.hpp"

namespace recruit {

enum class RelationKind { Sfor, Sor };

std::string to_string(RelationKind kind);

struct WeightedEdge {
  DeviceId u;  // u < v
  DeviceId v;
  double weight = 1.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Undirected graph over device ids. Edges are canonical (u < v), sorted,
/// unique, loop-free, with weights in (0,1].
class RelationGraph {
 public:
  RelationGraph(RelationKind kind, std::vector<DeviceId> nodes, std::vector<WeightedEdge> edges);

  RelationKind kind() const noexcept { return kind_; }
  std::span<const DeviceId> nodes() const noexcept { return nodes_; }
  std::span<const WeightedEdge> edges() const noexcept { return edges_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  bool contains(DeviceId id) const;
  /// Position of `id` in nodes(); throws std::out_of_range.
  std::size_t index_of(DeviceId id) const;
  /// 0 when there is no edge.
  double weight(DeviceId a, DeviceId b) const;

  /// `u v weight` per line.
  std::string edge_list() const;

 private:
  RelationKind kind_;
  std::vector<DeviceId> nodes_;
  std::vector<WeightedEdge> edges_;
  // id -> position + 1 (0 = absent); built only when ids are reasonably dense.
  std::vector<std::uint32_t> slot_;

  std::size_t find(DeviceId id) const;  // node_count() when absent
};

inline constexpr HopLimit kDefaultSforHops = 2;

/// Same-owner pairs get weight 1; devices whose owners are d <= max_hops
/// apart in the owner network get weight 1/d.
RelationGraph build_sfor(const Scenario& scenario, const CandidatePool& pool, DeviceId requester,
                         HopLimit max_hops = kDefaultSforHops);
RelationGraph build_sfor(const Scenario& scenario, const CandidatePool& pool,
                         HopLimit max_hops = kDefaultSforHops);

struct SorThresholds {
  std::size_t min_meetings = 3;
  std::int64_t min_duration_s = 30 * 60;
  std::int64_t min_gap_s = 6 * 60 * 60;
};

/// Number of qualifying meetings in a start-sorted list of one pair's contacts:
/// a meeting counts when it lasts >= min_duration and starts >= min_gap after
/// the previous counted meeting.
std::size_t count_qualifying_meetings(std::span<const ContactEvent> sorted_meetings,
                                      const SorThresholds& th);

/// Weight-1 edge for every node pair with at least `min_meetings` qualifying meetings.
RelationGraph build_sor(const Scenario& scenario, const CandidatePool& pool, DeviceId requester,
                        const SorThresholds& th = {});
RelationGraph build_sor(const Scenario& scenario, const CandidatePool& pool,
                        const SorThresholds& th = {});

}  // namespace recruit
