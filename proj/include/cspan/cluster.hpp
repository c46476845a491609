#pragma once

// Clusters, partitions, the radius recurrence, and the virtual cluster graph.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cspan/bfs.hpp"
#include "cspan/graph.hpp"
#include "cspan/spanner_edges.hpp"
#include "cspan/verdict.hpp"

namespace cspan {

using Wide = boost::multiprecision::checked_uint128_t;

struct Cluster {
  VertexId center;
  std::vector<VertexId> members;          // ascending
  std::map<VertexId, VertexId> parent;    // every member except the center

  bool contains(VertexId v) const { return std::binary_search(members.begin(), members.end(), v); }

  /// Depth of the tree, or nullopt if parent pointers do not reach the center.
  std::optional<std::uint64_t> depth() const {
    std::uint64_t best = 0;
    for (auto v : members) {
      std::uint64_t d = 0;
      auto x = v;
      while (x != center) {
        auto it = parent.find(x);
        if (it == parent.end() || ++d > members.size()) return std::nullopt;
        x = it->second;
      }
      best = std::max(best, d);
    }
    return best;
  }

  bool operator==(const Cluster&) const = default;
};

struct ClusterSet {
  std::uint32_t phase = 0;
  std::vector<Cluster> clusters;  // ascending by center

  std::size_t size() const { return clusters.size(); }

  /// Position of each vertex's cluster, by vertex index.
  std::vector<std::optional<std::uint32_t>> index_by_vertex(const Graph& g) const {
    std::vector<std::optional<std::uint32_t>> out(g.vertex_count());
    for (std::uint32_t k = 0; k < clusters.size(); ++k)
      for (auto v : clusters[k].members) out[g.at(v)] = k;
    return out;
  }

  std::vector<VertexId> covered() const {
    std::vector<VertexId> out;
    for (const auto& c : clusters) out.insert(out.end(), c.members.begin(), c.members.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  bool operator==(const ClusterSet&) const = default;
};

inline ClusterSet singleton_partition(const Graph& g) {
  ClusterSet p;
  for (auto v : g.vertices()) p.clusters.push_back({v, {v}, {}});
  return p;
}

struct RadiusSequence {
  std::uint64_t delta = 0;
  std::vector<Wide> values;  // R_0..R_ell

  /// δ·Σ_{j<i} (2δ+1)^j
  Wide closed_form(std::size_t i) const {
    Wide sum = 0;
    Wide pw = 1;
    for (std::size_t j = 0; j < i; ++j) {
      sum += pw;
      pw *= Wide(2 * delta + 1);
    }
    return Wide(delta) * sum;
  }

  /// 2·R_i ≤ (2δ+1)^i
  bool within_half_power(std::size_t i) const {
    Wide pw = 1;
    for (std::size_t j = 0; j < i; ++j) pw *= Wide(2 * delta + 1);
    return 2 * values[i] <= pw;
  }

  std::uint64_t at(std::size_t i) const {
    if (values[i] > Wide(std::numeric_limits<std::uint64_t>::max() / 8))
      throw ParameterError("radius bound too large for round accounting");
    return static_cast<std::uint64_t>(values[i]);
  }
};

/// R_0 = 0, R_{i+1} = (2δ+1)·R_i + δ. Throws std::overflow_error past 128 bits.
inline RadiusSequence radius_sequence(std::uint64_t delta, std::size_t ell) {
  if (delta < 1) throw ParameterError("delta must be at least 1");
  RadiusSequence rs{delta, {Wide(0)}};
  for (std::size_t i = 0; i < ell; ++i) rs.values.push_back(Wide(2 * delta + 1) * rs.values.back() + Wide(delta));
  return rs;
}

/// Checks tree ⊆ H, tree spans the members using members only, and depth ≤ bound.
inline Verdict verify_cluster_tree(const Cluster& c, const SpannerEdgeSet& h, std::uint64_t bound) {
  const std::string name = "cluster-tree(" + std::to_string(c.center.value) + ")";
  if (!c.contains(c.center)) return Verdict::fail(name, "center: center is not a member");
  if (c.parent.count(c.center)) return Verdict::fail(name, "spans: center has a parent");
  for (auto [child, par] : c.parent) {
    if (!c.contains(child)) return Verdict::fail(name, "members-only: vertex " + std::to_string(child.value) + " is not a member");
    if (!c.contains(par)) return Verdict::fail(name, "members-only: vertex " + std::to_string(par.value) + " is not a member");
    if (!h.contains(Edge(child, par)))
      return Verdict::fail(name, "tree-in-H: edge " + std::to_string(child.value) + " " + std::to_string(par.value) +
                                     " is not in H");
  }
  for (auto v : c.members)
    if (v != c.center && !c.parent.count(v))
      return Verdict::fail(name, "spans: member " + std::to_string(v.value) + " has no parent");
  auto d = c.depth();
  if (!d) return Verdict::fail(name, "spans: parent pointers contain a cycle");
  if (*d > bound)
    return Verdict::fail(name, "depth: " + std::to_string(*d) + " exceeds bound " + std::to_string(bound));
  return Verdict::pass(name, "depth " + std::to_string(*d));
}

/// Supervertices are the clusters of a ClusterSet (by position). A superedge
/// joins two adjacent clusters when at least one of them is popular.
struct VirtualClusterGraph {
  std::size_t cluster_count = 0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Edge> superedges;  // (lo, hi) → smallest witness
  Adjacency adjacency;

  std::optional<Edge> witness(std::uint32_t a, std::uint32_t b) const {
    auto it = superedges.find({std::min(a, b), std::max(a, b)});
    if (it == superedges.end()) return std::nullopt;
    return it->second;
  }
};

inline VirtualClusterGraph build_cluster_graph(const ClusterSet& p, const std::set<std::uint32_t>& popular,
                                               const Graph& g) {
  VirtualClusterGraph vg;
  vg.cluster_count = p.size();
  vg.adjacency.assign(p.size(), {});
  auto where = p.index_by_vertex(g);
  for (const auto& e : g.edges()) {  // lexicographic, so the first witness seen is the smallest
    auto a = where[g.at(e.u)];
    auto b = where[g.at(e.v)];
    if (!a || !b || *a == *b) continue;
    if (!popular.count(*a) && !popular.count(*b)) continue;
    vg.superedges.emplace(std::make_pair(std::min(*a, *b), std::max(*a, *b)), e);
  }
  for (const auto& [key, w] : vg.superedges) {
    vg.adjacency[key.first].push_back(key.second);
    vg.adjacency[key.second].push_back(key.first);
  }
  for (auto& a : vg.adjacency) std::sort(a.begin(), a.end());
  return vg;
}

/// Γ(C): positions of clusters adjacent to C through any edge of g.
inline std::vector<std::set<std::uint32_t>> neighbor_clusters(const ClusterSet& p, const Graph& g) {
  std::vector<std::set<std::uint32_t>> out(p.size());
  auto where = p.index_by_vertex(g);
  for (const auto& e : g.edges()) {
    auto a = where[g.at(e.u)];
    auto b = where[g.at(e.v)];
    if (!a || !b || *a == *b) continue;
    out[*a].insert(*b);
    out[*b].insert(*a);
  }
  return out;
}

}  // namespace cspan
