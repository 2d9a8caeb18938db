#pragma once

// Louvain community detection and the trusted worker set W_t.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "recruit/relations.hpp"
#include "recruit/spatial.hpp"

namespace recruit {

class EmptyGraph : public Error {
 public:
  EmptyGraph() : Error("community detection on a graph without nodes") {}
};

/// Disjoint communities over a relation graph's nodes. Community ids are dense
/// from 0, numbered in order of first appearance over ascending device ids.
struct CommunityPartition {
  RelationKind graph_kind = RelationKind::Sfor;
  std::vector<DeviceId> nodes;           // ascending, same order as the graph
  std::vector<std::uint32_t> community;  // community[i] for nodes[i]
  std::size_t community_count = 0;
  double modularity = 0.0;

  bool contains(DeviceId id) const;
  std::uint32_t community_of(DeviceId id) const;
  std::vector<DeviceId> members(std::uint32_t c) const;

  /// `node_id,community_id` CSV.
  std::string to_csv() const;
};

/// Q = (1/2m) sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j); 0 for an edgeless graph.
double modularity(const RelationGraph& graph, std::span<const std::uint32_t> community);

inline constexpr double kLouvainTolerance = 1e-7;

/// Small graphs get several seeded runs (best modularity kept) while the
/// combined work stays near kLouvainRestartWork node+edge visits per level.
inline constexpr std::size_t kLouvainRestartWork = 1024;
inline constexpr std::size_t kLouvainMaxRestarts = 8;
std::size_t louvain_restarts(std::size_t nodes, std::size_t edges);

/// Two-phase Louvain (local moves, then aggregation) until the modularity gain
/// of a level drops below kLouvainTolerance. Node visit order is shuffled by
/// `seed`; equal gains go to the lowest community id. The first run uses
/// `seed` itself; extra runs (see louvain_restarts) use derived seeds and only
/// win on strictly higher modularity. Throws EmptyGraph.
CommunityPartition louvain(const RelationGraph& graph, std::uint64_t seed);

struct TrustedSet {
  TaskId task;
  std::vector<DeviceId> workers;  // ascending

  friend bool operator==(const TrustedSet&, const TrustedSet&) = default;
};

/// Pool members sharing the requester's SFOR or SOR community.
TrustedSet trusted_workers(const CommunityPartition& sfor, const CommunityPartition& sor,
                           DeviceId requester, const CandidatePool& pool);

}  // namespace recruit
