#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "recruit/community.hpp"

using namespace recruit;

namespace {

RelationGraph graph(std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs,
                    RelationKind kind = RelationKind::Sfor) {
  std::vector<DeviceId> nodes;
  for (std::uint32_t i = 0; i < n; ++i) nodes.emplace_back(i);
  std::vector<WeightedEdge> edges;
  for (auto [a, b] : pairs) edges.push_back({DeviceId(a), DeviceId(b), 1.0});
  return RelationGraph(kind, nodes, edges);
}

RelationGraph two_triangles() { return graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}); }

}  // namespace

TEST(Modularity, TwoDisjointTrianglesSplitExactlyHalf) {
  const auto g = two_triangles();
  const auto p = louvain(g, 1);
  EXPECT_EQ(p.community_count, 2u);
  EXPECT_EQ(p.community, (std::vector<std::uint32_t>{0, 0, 0, 1, 1, 1}));
  EXPECT_NEAR(p.modularity, 0.5, 1e-12);
}

TEST(Modularity, CompleteGraphIsOneCommunity) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::uint32_t a = 0; a < 5; ++a)
    for (std::uint32_t b = a + 1; b < 5; ++b) e.emplace_back(a, b);
  const auto p = louvain(graph(5, e), 3);
  EXPECT_EQ(p.community_count, 1u);
  EXPECT_NEAR(p.modularity, 0.0, 1e-12);
}

TEST(Modularity, EdgelessGraphGivesSingletons) {
  const auto p = louvain(graph(4, {}), 3);
  EXPECT_EQ(p.community_count, 4u);
  EXPECT_EQ(p.modularity, 0.0);
  std::vector<std::uint32_t> singles{0, 1, 2, 3};
  EXPECT_EQ(modularity(graph(4, {}), singles), 0.0);
}

TEST(Modularity, EmptyGraphThrows) {
  EXPECT_THROW(louvain(RelationGraph(RelationKind::Sor, {}, {}), 1), EmptyGraph);
}

TEST(Modularity, MatchesPairwiseDefinition) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = oracle::random_connected_graph(rng, 2 + rng() % 12, 0.3, trial % 2 == 0);
    std::vector<std::uint32_t> c(g.node_count());
    for (auto& x : c) x = static_cast<std::uint32_t>(rng() % 4);
    ASSERT_NEAR(modularity(g, c), oracle::pairwise_modularity(g, c), 1e-12);
  }
}

TEST(Louvain, DeterministicForAGivenSeed) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = oracle::random_connected_graph(rng, 30, 0.1, true);
    const auto a = louvain(g, 77), b = louvain(g, 77);
    EXPECT_EQ(a.community, b.community);
    EXPECT_EQ(a.modularity, b.modularity);
  }
}

TEST(Louvain, ReportedModularityIsConsistentAndBeatsSingletons) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = oracle::random_connected_graph(rng, 3 + rng() % 40, 0.15, trial % 3 == 0);
    const auto p = louvain(g, trial);
    std::vector<std::uint32_t> singles(g.node_count());
    for (std::uint32_t i = 0; i < singles.size(); ++i) singles[i] = i;
    EXPECT_NEAR(p.modularity, oracle::pairwise_modularity(g, p.community), 1e-9);
    EXPECT_GE(p.modularity + 1e-12, oracle::pairwise_modularity(g, singles));
    // Dense labels in first-appearance order.
    std::uint32_t next = 0;
    for (auto c : p.community) {
      ASSERT_LE(c, next);
      if (c == next) ++next;
    }
    EXPECT_EQ(next, p.community_count);
  }
}

TEST(Louvain, NearExhaustiveOptimumOnSmallGraphs) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 150; ++trial) {
    const auto g = oracle::random_connected_graph(rng, 2 + rng() % 7, 0.3, trial % 2 == 1);
    const auto best = oracle::exhaustive_best_modularity(g);
    EXPECT_GE(louvain(g, trial).modularity, best - 0.05);
  }
}

TEST(Louvain, PartitionQueries) {
  const auto p = louvain(two_triangles(), 5);
  EXPECT_TRUE(p.contains(DeviceId(4)));
  EXPECT_FALSE(p.contains(DeviceId(6)));
  EXPECT_EQ(p.members(1), (std::vector<DeviceId>{DeviceId(3), DeviceId(4), DeviceId(5)}));
  EXPECT_EQ(p.to_csv().substr(0, 27), "node_id,community_id\n0,0\n1,");
}

namespace {

CommunityPartition partition(RelationKind kind, std::vector<std::uint32_t> ids, std::vector<std::uint32_t> comm) {
  CommunityPartition p;
  p.graph_kind = kind;
  for (auto i : ids) p.nodes.emplace_back(i);
  p.community = std::move(comm);
  std::uint32_t top = 0;
  for (auto c : p.community) top = std::max(top, c + 1);
  p.community_count = top;
  return p;
}

}  // namespace

TEST(TrustedWorkers, UnionOfRequesterCommunities) {
  // Requester 0. SFOR groups {0,1,2} {3,4}; SOR groups {0,4} {1,2,3}.
  const auto sfor = partition(RelationKind::Sfor, {0, 1, 2, 3, 4}, {0, 0, 0, 1, 1});
  const auto sor = partition(RelationKind::Sor, {0, 1, 2, 3, 4}, {0, 1, 1, 1, 0});
  const CandidatePool pool{TaskId(3), {DeviceId(1), DeviceId(2), DeviceId(3), DeviceId(4)}};
  const auto w = trusted_workers(sfor, sor, DeviceId(0), pool);
  EXPECT_EQ(w.task, TaskId(3));
  EXPECT_EQ(w.workers, (std::vector<DeviceId>{DeviceId(1), DeviceId(2), DeviceId(4)}));
}

TEST(TrustedWorkers, RequesterAloneMeansNobody) {
  const auto sfor = partition(RelationKind::Sfor, {0, 1, 2}, {0, 1, 1});
  const auto sor = partition(RelationKind::Sor, {0, 1, 2}, {0, 1, 2});
  const CandidatePool pool{TaskId(0), {DeviceId(1), DeviceId(2)}};
  EXPECT_TRUE(trusted_workers(sfor, sor, DeviceId(0), pool).workers.empty());
}

TEST(TrustedWorkers, InvariantUnderCommunityRelabelling) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t n = 2 + rng() % 12;
    std::vector<std::uint32_t> ids(n), a(n), b(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      ids[i] = i;
      a[i] = rng() % 4;
      b[i] = rng() % 4;
    }
    CandidatePool pool{TaskId(0), {}};
    for (std::uint32_t i = 1; i < n; ++i) pool.members.emplace_back(i);
    const auto base = trusted_workers(partition(RelationKind::Sfor, ids, a), partition(RelationKind::Sor, ids, b),
                                      DeviceId(0), pool);
    auto a2 = a, b2 = b;
    for (auto& c : a2) c = 3 - c;
    for (auto& c : b2) c = (c + 1) % 4;
    EXPECT_EQ(trusted_workers(partition(RelationKind::Sfor, ids, a2), partition(RelationKind::Sor, ids, b2),
                              DeviceId(0), pool),
              base);
  }
}

TEST(Louvain, RestartBudgetShrinksWithGraphSize) {
  EXPECT_EQ(louvain_restarts(6, 6), kLouvainMaxRestarts);
  EXPECT_EQ(louvain_restarts(200, 312), 2u);
  EXPECT_EQ(louvain_restarts(358, 2726), 1u);
  EXPECT_EQ(louvain_restarts(0, 0), kLouvainMaxRestarts);
}
