#pragma once

// Per-phase records and the result type shared by both constructions.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cspan/cluster.hpp"
#include "cspan/sim/simulator.hpp"
#include "cspan/spanner_edges.hpp"
#include "cspan/supercluster.hpp"
#include "cspan/verdict.hpp"

namespace cspan {

struct PhaseReport {
  std::uint32_t i = 0;
  std::uint64_t p_size = 0;  // |P_i|
  std::uint64_t w_size = 0;  // popular clusters
  std::uint64_t q_size = 0;  // ruling clusters
  std::uint64_t u_size = 0;  // clusters left for interconnection
  std::uint64_t radius_bound = 0;  // R_i
  std::uint64_t radius = 0;        // deepest tree in P_i
  double threshold = 0;            // n^(1/κ) or deg_i
  std::uint64_t threshold_count = 0;  // least count meeting it
  std::uint64_t edges_super = 0;   // charge events
  std::uint64_t edges_inter = 0;
  std::uint64_t h_size = 0;        // |H| after the phase
  sim::Round rounds = 0;
  std::vector<Verdict> checks;

  bool operator==(const PhaseReport&) const = default;
};

struct BuildOptions {
  std::uint32_t B = 2;
  /// Cross-check against centralized oracles when n is at most this.
  std::size_t oracle_max_n = 64;
};

struct BuildResult {
  SpannerEdgeSet h;
  std::vector<PhaseReport> reports;
  sim::SimTrace trace;
  sim::SimTrace broadcast_trace;  // knock-outs on singleton clusters
  std::vector<Verdict> checks;    // whole-run checks
  std::vector<ClusterSet> removed;  // U_0..U_ℓ
  std::uint64_t stretch_radius = 0;  // R_ℓ

  sim::Round rounds() const { return trace.rounds_elapsed; }

  bool ok() const {
    if (!all_ok(checks)) return false;
    for (const auto& r : reports)
      if (!all_ok(r.checks)) return false;
    return true;
  }

  /// Every check, phase checks prefixed with their phase.
  std::vector<Verdict> all_checks() const {
    std::vector<Verdict> out;
    for (const auto& r : reports)
      for (auto v : r.checks) {
        v.name = "phase " + std::to_string(r.i) + " " + v.name;
        out.push_back(std::move(v));
      }
    out.insert(out.end(), checks.begin(), checks.end());
    return out;
  }
};

namespace detail {

inline std::string join_ids(const std::vector<VertexId>& v, std::size_t limit = 8) {
  std::string s;
  for (std::size_t k = 0; k < v.size() && k < limit; ++k) s += (k ? "," : "") + std::to_string(v[k].value);
  if (v.size() > limit) s += ",...";
  return s;
}

inline Verdict check_trees(const ClusterSet& p, const SpannerEdgeSet& h, std::uint64_t bound, std::uint64_t* radius) {
  std::uint64_t worst = 0;
  for (const auto& c : p.clusters) {
    auto v = verify_cluster_tree(c, h, bound);
    if (!v.ok) return Verdict::fail("radius", "cluster " + std::to_string(c.center.value) + " " + v.name + ": " + v.detail);
    worst = std::max(worst, *c.depth());
  }
  if (radius) *radius = worst;
  return Verdict::pass("radius", std::to_string(worst) + " <= " + std::to_string(bound));
}

/// U_0 ∪ … ∪ U_ℓ is exactly V, without overlap.
inline Verdict check_partition(const Graph& g, const std::vector<ClusterSet>& removed) {
  std::vector<char> seen(g.vertex_count(), 0);
  for (const auto& u : removed)
    for (const auto& c : u.clusters)
      for (auto v : c.members) {
        if (seen[g.at(v)]++) return Verdict::fail("partition", "vertex " + std::to_string(v.value) + " removed twice");
      }
  for (Index v = 0; v < g.vertex_count(); ++v)
    if (!seen[v]) return Verdict::fail("partition", "vertex " + std::to_string(g.id(v).value) + " never removed");
  return Verdict::pass("partition", std::to_string(g.vertex_count()) + " vertices");
}

inline Verdict check_disjoint_popular(const std::set<std::uint32_t>& w, const std::vector<std::uint32_t>& u,
                                      const ClusterSet& p) {
  for (auto k : u)
    if (w.count(k))
      return Verdict::fail("popular-superclustered",
                           "popular cluster " + std::to_string(p.clusters[k].center.value) + " was not superclustered");
  return Verdict::pass("popular-superclustered");
}

inline Verdict check_supercluster_charges(const SpannerEdgeSet& h) {
  for (auto [v, k] : h.charges_per_vertex(EdgeKind::supercluster))
    if (k > 1)
      return Verdict::fail("supercluster-charges",
                           "vertex " + std::to_string(v.value) + " charged " + std::to_string(k) + " times");
  return Verdict::pass("supercluster-charges");
}

inline Verdict compare_bfs(const SuperclusterResult& got, const SuperclusterResult& ref) {
  if (got.next != ref.next) return Verdict::fail("bfs-reference", "next cluster collection differs");
  if (got.edges != ref.edges) return Verdict::fail("bfs-reference", "superclustering edges differ");
  if (got.unclustered != ref.unclustered) return Verdict::fail("bfs-reference", "unclustered set differs");
  return Verdict::pass("bfs-reference", std::to_string(got.next.size()) + " clusters");
}

inline ClusterSet subset(const ClusterSet& p, const std::vector<std::uint32_t>& ks) {
  ClusterSet out;
  out.phase = p.phase;
  for (auto k : ks) out.clusters.push_back(p.clusters[k]);
  return out;
}

}  // namespace detail
}  // namespace cspan
