#include "recruit/community.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace recruit {

bool CommunityPartition::contains(DeviceId id) const {
  return std::binary_search(nodes.begin(), nodes.end(), id);
}

std::uint32_t CommunityPartition::community_of(DeviceId id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
  if (it == nodes.end() || *it != id) throw std::out_of_range(to_string(id) + " not partitioned");
  return community[static_cast<std::size_t>(it - nodes.begin())];
}

std::vector<DeviceId> CommunityPartition::members(std::uint32_t c) const {
  std::vector<DeviceId> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (community[i] == c) out.push_back(nodes[i]);
  }
  return out;
}

std::string CommunityPartition::to_csv() const {
  std::string out = "node_id,community_id\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out += std::to_string(nodes[i].value) + ',' + std::to_string(community[i]) + '\n';
  }
  return out;
}

double modularity(const RelationGraph& graph, std::span<const std::uint32_t> community) {
  if (community.size() != graph.node_count()) {
    throw std::invalid_argument("modularity: assignment size differs from node count");
  }
  double m = 0.0;
  for (const auto& e : graph.edges()) m += e.weight;
  if (m == 0.0) return 0.0;

  const std::size_t groups =
      community.empty() ? 0 : *std::max_element(community.begin(), community.end()) + 1u;
  std::vector<double> inside(groups, 0.0);
  std::vector<double> total(groups, 0.0);
  for (const auto& e : graph.edges()) {
    const auto cu = community[graph.index_of(e.u)];
    const auto cv = community[graph.index_of(e.v)];
    total[cu] += e.weight;
    total[cv] += e.weight;
    if (cu == cv) inside[cu] += e.weight;
  }
  double q = 0.0;
  for (std::size_t c = 0; c < groups; ++c) {
    const double share = total[c] / (2.0 * m);
    q += inside[c] / m - share * share;
  }
  return q;
}

namespace {

// Weighted graph at one Louvain level in CSR form. A self-loop holds the
// internal weight of an aggregated community, each original edge counted once.
struct Level {
  std::vector<std::size_t> offset{0};
  std::vector<std::pair<std::uint32_t, double>> adjacent;
  std::vector<double> self_loop;
  std::vector<double> degree;  // self-loops count twice

  std::size_t size() const { return self_loop.size(); }
  std::span<const std::pair<std::uint32_t, double>> neighbors(std::uint32_t i) const {
    return {adjacent.data() + offset[i], offset[i + 1] - offset[i]};
  }
};

Level level_from(const RelationGraph& g) {
  Level lv;
  const auto n = g.node_count();
  lv.self_loop.assign(n, 0.0);
  lv.degree.assign(n, 0.0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ends;
  ends.reserve(g.edges().size());
  std::vector<std::size_t> count(n, 0);
  for (const auto& e : g.edges()) {
    const auto u = static_cast<std::uint32_t>(g.index_of(e.u));
    const auto v = static_cast<std::uint32_t>(g.index_of(e.v));
    ends.emplace_back(u, v);
    ++count[u];
    ++count[v];
  }
  lv.offset.resize(n + 1);
  for (std::size_t i = 0; i < n; ++i) lv.offset[i + 1] = lv.offset[i] + count[i];
  lv.adjacent.resize(lv.offset[n]);
  std::vector<std::size_t> fill(lv.offset.begin(), lv.offset.end() - 1);
  for (std::size_t k = 0; k < ends.size(); ++k) {
    const auto [u, v] = ends[k];
    const double w = g.edges()[k].weight;
    lv.adjacent[fill[u]++] = {v, w};
    lv.adjacent[fill[v]++] = {u, w};
    lv.degree[u] += w;
    lv.degree[v] += w;
  }
  return lv;
}

// Local moving phase starting from singletons. Passes repeat until no node
// moves or a pass gains less than kLouvainTolerance. Returns true when some
// node changed community; `q_start` / `q_end` receive the level modularity.
bool move_nodes(const Level& lv, std::vector<std::uint32_t>& comm, double m2, std::mt19937_64& rng,
                double& q_start, double& q_end) {
  constexpr double eps = 1e-12;
  const auto n = static_cast<std::uint32_t>(lv.size());
  // total[c]: summed degree; inside[c]: internal weight, each edge counted twice.
  std::vector<double> total(lv.degree), inside(n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) inside[i] = 2.0 * lv.self_loop[i];
  auto quality = [&] {
    double q = 0.0;
    for (std::uint32_t c = 0; c < n; ++c) {
      if (total[c] != 0.0) q += inside[c] / m2 - (total[c] / m2) * (total[c] / m2);
    }
    return q;
  };

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> link(n, 0.0);
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> touched;
  bool any_move = false;
  double q = quality();
  q_start = q;

  while (true) {
    bool moved = false;
    for (auto i : order) {
      const auto own = comm[i];
      const double ki = lv.degree[i];

      touched.assign(1, own);
      seen[own] = 1;
      for (auto [j, w] : lv.neighbors(i)) {
        const auto c = comm[j];
        if (!seen[c]) {
          seen[c] = 1;
          touched.push_back(c);
        }
        link[c] += w;
      }

      total[own] -= ki;
      auto gain = [&](std::uint32_t c) { return link[c] - total[c] * ki / m2; };
      const double stay = gain(own);
      auto best = own;
      double best_gain = stay;
      for (auto c : touched) {
        if (c == own) continue;
        const double g = gain(c);
        if (g <= stay + eps) continue;
        if (best == own || g > best_gain + eps || (g >= best_gain - eps && c < best)) {
          best = c;
          best_gain = g;
        }
      }
      total[best] += ki;
      if (best != own) {
        inside[own] -= 2.0 * (link[own] + lv.self_loop[i]);
        inside[best] += 2.0 * (link[best] + lv.self_loop[i]);
        comm[i] = best;
        moved = true;
        any_move = true;
      }
      for (auto c : touched) {
        link[c] = 0.0;
        seen[c] = 0;
      }
    }
    if (!moved) break;
    const double next = quality();
    const bool stalled = next - q < kLouvainTolerance;
    q = next;
    if (stalled) break;
  }
  q_end = q;
  return any_move;
}

// Dense relabel preserving the order of the existing labels.
std::size_t compact(std::vector<std::uint32_t>& comm) {
  std::vector<std::uint32_t> labels(comm.begin(), comm.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  for (auto& c : comm) {
    c = static_cast<std::uint32_t>(std::lower_bound(labels.begin(), labels.end(), c) - labels.begin());
  }
  return labels.size();
}

Level aggregate(const Level& lv, const std::vector<std::uint32_t>& comm, std::size_t groups) {
  Level next;
  next.self_loop.assign(groups, 0.0);
  next.degree.assign(groups, 0.0);
  next.offset.assign(groups + 1, 0);

  // Members of each community, in node order.
  std::vector<std::size_t> start(groups + 1, 0);
  for (auto c : comm) ++start[c + 1];
  for (std::size_t c = 0; c < groups; ++c) start[c + 1] += start[c];
  std::vector<std::uint32_t> members(comm.size());
  {
    auto fill = start;
    for (std::uint32_t i = 0; i < comm.size(); ++i) members[fill[comm[i]]++] = i;
  }

  std::vector<double> link(groups, 0.0);
  std::vector<char> seen(groups, 0);
  std::vector<std::uint32_t> touched;
  for (std::uint32_t c = 0; c < groups; ++c) {
    touched.clear();
    for (auto k = start[c]; k < start[c + 1]; ++k) {
      const auto i = members[k];
      next.degree[c] += lv.degree[i];
      next.self_loop[c] += lv.self_loop[i];
      for (auto [j, w] : lv.neighbors(i)) {
        const auto cj = comm[j];
        if (cj == c) {
          next.self_loop[c] += w / 2.0;  // each edge is seen from both ends
          continue;
        }
        if (!seen[cj]) {
          seen[cj] = 1;
          touched.push_back(cj);
        }
        link[cj] += w;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (auto cj : touched) {
      next.adjacent.emplace_back(cj, link[cj]);
      link[cj] = 0.0;
      seen[cj] = 0;
    }
    next.offset[c + 1] = next.adjacent.size();
  }
  return next;
}

}  // namespace

namespace {

// One seeded Louvain run; labels numbered by first appearance.
std::vector<std::uint32_t> louvain_once(const Level& base, double m2, std::uint64_t seed) {
  const auto n = base.size();
  std::mt19937_64 rng(seed);
  Level lv = base;
  std::vector<std::uint32_t> node_comm(n);
  std::iota(node_comm.begin(), node_comm.end(), 0u);
  while (true) {
    std::vector<std::uint32_t> comm(lv.size());
    std::iota(comm.begin(), comm.end(), 0u);
    double q = 0.0, next_q = 0.0;
    if (!move_nodes(lv, comm, m2, rng, q, next_q)) break;
    const auto groups = compact(comm);
    for (auto& c : node_comm) c = comm[c];
    lv = aggregate(lv, comm, groups);
    if (next_q - q < kLouvainTolerance || groups == 1) break;
  }

  std::vector<std::uint32_t> relabel(n, UINT32_MAX), out(n);
  std::uint32_t next_label = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = relabel[node_comm[i]];
    if (r == UINT32_MAX) r = next_label++;
    out[i] = r;
  }
  return out;
}

std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t r) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (r + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::size_t louvain_restarts(std::size_t nodes, std::size_t edges) {
  const auto work = std::max<std::size_t>(1, nodes + edges);
  return std::clamp<std::size_t>(kLouvainRestartWork / work, 1, kLouvainMaxRestarts);
}

CommunityPartition louvain(const RelationGraph& graph, std::uint64_t seed) {
  const auto n = graph.node_count();
  if (n == 0) throw EmptyGraph();

  CommunityPartition part;
  part.graph_kind = graph.kind();
  part.nodes.assign(graph.nodes().begin(), graph.nodes().end());
  part.community.resize(n);
  std::iota(part.community.begin(), part.community.end(), 0u);

  double m = 0.0;
  for (const auto& e : graph.edges()) m += e.weight;
  if (m == 0.0) {
    part.community_count = n;
    part.modularity = 0.0;
    return part;
  }

  const Level base = level_from(graph);
  const auto restarts = louvain_restarts(n, graph.edges().size());
  for (std::size_t r = 0; r < restarts; ++r) {
    auto comm = louvain_once(base, 2.0 * m, r == 0 ? seed : restart_seed(seed, r));
    const double q = modularity(graph, comm);
    if (r == 0 || q > part.modularity) {
      part.community = std::move(comm);
      part.modularity = q;
    }
  }
  part.community_count = *std::max_element(part.community.begin(), part.community.end()) + 1;
  return part;
}

TrustedSet trusted_workers(const CommunityPartition& sfor, const CommunityPartition& sor,
                           DeviceId requester, const CandidatePool& pool) {
  TrustedSet out{pool.task, {}};
  const auto sfor_c = sfor.community_of(requester);
  const auto sor_c = sor.community_of(requester);
  for (auto w : pool.members) {
    if (w == requester) continue;
    const bool in_sfor = sfor.contains(w) && sfor.community_of(w) == sfor_c;
    const bool in_sor = sor.contains(w) && sor.community_of(w) == sor_c;
    if (in_sfor || in_sor) out.workers.push_back(w);
  }
  return out;
}

}  // namespace recruit
