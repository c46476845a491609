#include <gtest/gtest.h>

#include <random>

#include "cspan/engine.hpp"
#include "cspan/generators.hpp"

using namespace cspan;

namespace {

VertexId V(std::uint32_t v) { return VertexId(v); }

std::set<VertexId> all_vertices(const Graph& g) { return {g.vertices().begin(), g.vertices().end()}; }

std::set<std::uint32_t> all_positions(const ClusterSet& p) {
  std::set<std::uint32_t> s;
  for (std::uint32_t k = 0; k < p.size(); ++k) s.insert(k);
  return s;
}

std::uint32_t position_of(const ClusterSet& p, VertexId center) {
  for (std::uint32_t k = 0; k < p.size(); ++k)
    if (p.clusters[k].center == center) return k;
  throw std::logic_error("no such center");
}

struct Stage {
  ClusterSet p;
  SpannerEdgeSet h;
  std::uint32_t q = 1;
};

/// Phase-1 clusters: every singleton popular, AGLP ruling set, reference BFS.
Stage phase_one(const Graph& g) {
  auto p0 = singleton_partition(g);
  auto all = all_positions(p0);
  auto vg = build_cluster_graph(p0, all, g);
  auto params = aglp_params(g.vertex_count());
  auto rs = congest_ruling_set(g, all_vertices(g), params);
  std::set<std::uint32_t> q;
  for (auto v : rs.members) q.insert(position_of(p0, v));
  auto res = reference_bfs_supercluster(p0, vg, q, 2 * params.q, 0);
  Stage s;
  s.p = res.next;
  for (const auto& c : res.edges) s.h.add(c);
  s.q = params.q;
  return s;
}

}  // namespace

TEST(CongestRulingSet, SingletonTarget) {
  auto g = generate_graph(GraphKind::cycle, {.n = 9}).graph;
  auto rs = congest_ruling_set(g, {V(4)}, {.q = 2, .c = 2});
  EXPECT_EQ(rs.members, std::set<VertexId>{V(4)});
}

TEST(CongestRulingSet, CompleteGraphKeepsOne) {
  auto g = generate_graph(GraphKind::complete, {.n = 5}).graph;
  auto rs = congest_ruling_set(g, all_vertices(g), {.q = 2, .c = 2});
  EXPECT_EQ(rs.members.size(), 1u);
  EXPECT_TRUE(check_ruling(g, rs.members, all_vertices(g), 3, 4).ok);
}

TEST(CongestRulingSet, PathOfTenIsThreeFourRuling) {
  auto g = generate_graph(GraphKind::path, {.n = 10}).graph;
  auto rs = congest_ruling_set(g, all_vertices(g), {.q = 2, .c = 2});
  auto v = check_ruling(g, rs.members, all_vertices(g), 3, 4);
  EXPECT_TRUE(v.ok) << v.detail;
}

TEST(CongestRulingSet, EmptyTargetRejected) {
  auto g = generate_graph(GraphKind::path, {.n = 3}).graph;
  EXPECT_THROW(congest_ruling_set(g, {}, {}), PreconditionError);
}

TEST(CongestRulingSet, KnockoutIsBroadcastCompliant) {
  auto g = generate_graph(GraphKind::grid, {.rows = 5, .cols = 6}).graph;
  sim::SimTrace t;
  auto rs = congest_ruling_set(g, all_vertices(g), {.q = 3, .c = 2}, &t);
  EXPECT_TRUE(t.broadcast_compliant);
  EXPECT_LE(t.max_ids_per_message, 2u);
  EXPECT_LE(t.messages_per_edge_per_round_max, 1u);
  EXPECT_TRUE(check_ruling(g, rs.members, all_vertices(g), 3, 6).ok);
}

TEST(CongestRulingSet, Deterministic) {
  auto g = generate_graph(GraphKind::gnp_connected, {.n = 60, .p = 0.08}, 3).graph;
  sim::SimTrace a, b;
  auto x = congest_ruling_set(g, all_vertices(g), {.q = 2, .c = 2}, &a);
  auto y = congest_ruling_set(g, all_vertices(g), {.q = 2, .c = 2}, &b);
  EXPECT_EQ(x.members, y.members);
  EXPECT_EQ(a, b);
}

TEST(CongestRulingSet, SeparationThreeForLargerC) {
  auto g = generate_graph(GraphKind::gnp_connected, {.n = 80, .p = 0.05}, 11).graph;
  auto rs = congest_ruling_set(g, all_vertices(g), {.q = 2, .c = 3});
  auto v = check_ruling(g, rs.members, all_vertices(g), 4, 6);
  EXPECT_TRUE(v.ok) << v.detail;
}

TEST(CongestRulingSet, RandomTargetsPassChecker) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    auto g = generate_graph(GraphKind::gnp_connected, {.n = static_cast<std::uint32_t>(40 + 7 * seed), .p = 0.06}, seed).graph;
    std::mt19937_64 rng(seed);
    std::set<VertexId> a;
    for (auto v : g.vertices())
      if (rng() % 3 == 0) a.insert(v);
    if (a.empty()) a.insert(g.id(0));
    for (std::uint32_t q : {2u, 3u, ceil_log2(g.vertex_count())}) {
      auto rs = congest_ruling_set(g, a, {.q = q, .c = 2});
      auto v = check_ruling(g, rs.members, a, 3, 2 * q);
      EXPECT_TRUE(v.ok) << "seed " << seed << " q " << q << ": " << v.detail;
    }
  }
}

TEST(AglpRulingSet, PathOfSixteen) {
  auto g = generate_graph(GraphKind::path, {.n = 16}).graph;
  auto rs = aglp_ruling_set(g, all_vertices(g));
  EXPECT_TRUE(check_ruling(g, rs.members, all_vertices(g), 3, 8).ok);
}

TEST(AglpRulingSet, SingletonTarget) {
  auto g = generate_graph(GraphKind::grid, {.rows = 3, .cols = 3}).graph;
  EXPECT_EQ(aglp_ruling_set(g, {V(5)}).members, std::set<VertexId>{V(5)});
}

TEST(AglpRulingSet, SingleEdgeKeepsOneEndpoint) {
  auto g = generate_graph(GraphKind::path, {.n = 2}).graph;
  auto rs = aglp_ruling_set(g, all_vertices(g));
  EXPECT_EQ(rs.members.size(), 1u);
}

TEST(CheckRuling, SingleMemberPasses) {
  auto g = generate_graph(GraphKind::path, {.n = 4}).graph;
  EXPECT_TRUE(check_ruling(g, {V(2)}, {V(2)}, 7, 0).ok);
}

TEST(CheckRuling, NamesSeparationPair) {
  auto g = generate_graph(GraphKind::path, {.n = 4}).graph;
  auto v = check_ruling(g, {V(1), V(3)}, all_vertices(g), 3, 4);
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.detail.find("separation"), std::string::npos);
  EXPECT_NE(v.detail.find("1"), std::string::npos);
  EXPECT_NE(v.detail.find("3"), std::string::npos);
}

TEST(CheckRuling, EmptyMembersFailDomination) {
  auto g = generate_graph(GraphKind::path, {.n = 4}).graph;
  auto v = check_ruling(g, {}, {V(2)}, 3, 4);
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.detail.find("domination"), std::string::npos);
}

TEST(SupergraphRulingSet, SingletonsMatchBaseGraph) {
  auto g = generate_graph(GraphKind::gnp_connected, {.n = 50, .p = 0.07}, 5).graph;
  auto p = singleton_partition(g);
  SpannerEdgeSet h;
  RulingParams params{3, 2};
  auto a = all_positions(p);
  auto rs = supergraph_ruling_set(g, h, p, a, params, 0);
  EXPECT_EQ(rs.members, congest_ruling_set(g, all_vertices(g), params).members);
}

TEST(SupergraphRulingSet, TwoAdjacentPopularClusters) {
  // Clusters {1,2} and {3,4} on the path 1-2-3-4, both popular.
  auto g = generate_graph(GraphKind::path, {.n = 4}).graph;
  ClusterSet p;
  p.clusters.push_back({V(1), {V(1), V(2)}, {{V(2), V(1)}}});
  p.clusters.push_back({V(4), {V(3), V(4)}, {{V(3), V(4)}}});
  SpannerEdgeSet h;
  h.add({Edge(V(1), V(2)), V(2)});
  h.add({Edge(V(3), V(4)), V(3)});
  auto rs = supergraph_ruling_set(g, h, p, {0, 1}, {2, 2}, 1);
  EXPECT_EQ(rs.members.size(), 1u);
}

TEST(SupergraphRulingSet, TreeDepthPrecondition) {
  auto g = generate_graph(GraphKind::path, {.n = 3}).graph;
  ClusterSet p;
  p.clusters.push_back({V(1), {V(1), V(2), V(3)}, {{V(2), V(1)}, {V(3), V(2)}}});
  SpannerEdgeSet h;
  h.add({Edge(V(1), V(2)), V(2)});
  h.add({Edge(V(2), V(3)), V(3)});
  EXPECT_THROW(supergraph_ruling_set(g, h, p, {0}, {1, 2}, 1), PreconditionError);
}

TEST(SupergraphRulingSet, PhaseOneClustersPassChecker) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto g = generate_graph(GraphKind::gnp_connected, {.n = 64, .p = 0.06}, seed).graph;
    auto s = phase_one(g);
    std::mt19937_64 rng(seed);
    std::set<std::uint32_t> a;
    for (std::uint32_t k = 0; k < s.p.size(); ++k)
      if (rng() % 2) a.insert(k);
    if (a.empty()) a.insert(0);
    auto R = radius_sequence(2 * s.q, 1).at(1);
    std::set<std::uint32_t> pos;
    supergraph_ruling_set(g, s.h, s.p, a, {2, 2}, R, &pos);
    auto vg = build_cluster_graph(s.p, a, g);
    auto v = check_ruling(vg, pos, a, 3, 4);
    EXPECT_TRUE(v.ok) << "seed " << seed << ": " << v.detail;
  }
}

TEST(BfsSupercluster, AllRootsKeepPartition) {
  auto g = generate_graph(GraphKind::cycle, {.n = 6}).graph;
  auto p = singleton_partition(g);
  auto all = all_positions(p);
  // Every cluster a root: only 3-separated when there are no superedges.
  auto empty = build_cluster_graph(p, {}, g);
  SpannerEdgeSet h;
  auto res = bfs_supercluster(g, p, empty, {}, all, 2, h, 0);
  EXPECT_TRUE(res.edges.empty());
  EXPECT_EQ(res.next.clusters, p.clusters);
  EXPECT_EQ(h.size(), 0u);
  auto ref = reference_bfs_supercluster(p, build_cluster_graph(p, all, g), all, 2, 0);
  EXPECT_TRUE(ref.edges.empty());
  EXPECT_EQ(ref.next.clusters, p.clusters);
}

TEST(BfsSupercluster, StarSupergraphDepthOne) {
  auto g = generate_graph(GraphKind::random_tree, {.n = 1}).graph;
  std::vector<Edge> e{{V(1), V(2)}, {V(1), V(3)}, {V(1), V(4)}, {V(1), V(5)}};
  g = Graph::from_edges(e);
  auto p = singleton_partition(g);
  auto vg = build_cluster_graph(p, {0}, g);
  SpannerEdgeSet h;
  auto res = bfs_supercluster(g, p, vg, {0}, {0}, 1, h, 0);
  ASSERT_EQ(res.next.size(), 1u);
  EXPECT_EQ(res.next.clusters[0].members.size(), 5u);
  EXPECT_EQ(res.edges.size(), 4u);
  EXPECT_EQ(h.size(), 4u);
  for (const auto& c : res.edges) EXPECT_NE(c.charged, V(1));
}

TEST(BfsSupercluster, PathSupergraphDepthTwo) {
  // Clusters A={1,2}, B={3,4}, C={5,6} on the path 1..6, all popular.
  auto g = generate_graph(GraphKind::path, {.n = 6}).graph;
  ClusterSet p;
  p.clusters.push_back({V(1), {V(1), V(2)}, {{V(2), V(1)}}});
  p.clusters.push_back({V(3), {V(3), V(4)}, {{V(4), V(3)}}});
  p.clusters.push_back({V(5), {V(5), V(6)}, {{V(6), V(5)}}});
  SpannerEdgeSet h;
  for (auto [a, b] : {std::pair{1u, 2u}, {3u, 4u}, {5u, 6u}}) h.add({Edge(V(a), V(b)), V(b)});
  auto vg = build_cluster_graph(p, {0, 1, 2}, g);
  auto res = bfs_supercluster(g, p, vg, {0, 1, 2}, {0}, 2, h, 0);
  ASSERT_EQ(res.next.size(), 1u);
  const auto& c = res.next.clusters[0];
  EXPECT_EQ(c.center, V(1));
  EXPECT_EQ(c.members.size(), 6u);
  // Input radius 1, delta 2: (2*2+1)*1+2.
  auto v = verify_cluster_tree(c, h, 7);
  EXPECT_TRUE(v.ok) << v.detail;
  EXPECT_EQ(res.next, reference_bfs_supercluster(p, vg, {0}, 2, 0).next);
}

TEST(BfsSupercluster, RejectsCloseRoots) {
  auto g = generate_graph(GraphKind::path, {.n = 4}).graph;
  auto p = singleton_partition(g);
  auto all = all_positions(p);
  auto vg = build_cluster_graph(p, all, g);
  SpannerEdgeSet h;
  EXPECT_THROW(bfs_supercluster(g, p, vg, all, {0, 2}, 1, h), PreconditionError);
}

TEST(BfsSupercluster, TieBreakSmallestRootCenter) {
  // 2 is adjacent to roots 1 and 3 at the same BFS level.
  auto g = generate_graph(GraphKind::path, {.n = 5}).graph;
  auto p = singleton_partition(g);
  auto all = all_positions(p);
  auto vg = build_cluster_graph(p, all, g);
  SpannerEdgeSet h;
  auto res = bfs_supercluster(g, p, vg, all, {0, 3}, 1, h);
  ASSERT_EQ(res.next.size(), 2u);
  EXPECT_EQ(res.next.clusters[0].members, (std::vector<VertexId>{V(1), V(2)}));
  EXPECT_EQ(res.next.clusters[1].members, (std::vector<VertexId>{V(3), V(4), V(5)}));
}

TEST(BfsSupercluster, MatchesReferenceOnSingletons) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = generate_graph(GraphKind::gnp_connected, {.n = 48, .p = 0.07}, seed).graph;
    auto p = singleton_partition(g);
    std::mt19937_64 rng(seed);
    std::set<std::uint32_t> pop;
    for (std::uint32_t k = 0; k < p.size(); ++k)
      if (rng() % 2) pop.insert(k);
    if (pop.empty()) pop.insert(0);
    auto vg = build_cluster_graph(p, pop, g);
    std::set<std::uint32_t> q;
    SpannerEdgeSet h0;
    supergraph_ruling_set(g, h0, p, pop, {3, 2}, 0, &q);
    SpannerEdgeSet h;
    auto res = bfs_supercluster(g, p, vg, pop, q, 6, h);
    auto ref = reference_bfs_supercluster(p, vg, q, 6, 0);
    EXPECT_EQ(res.next, ref.next) << "seed " << seed;
    EXPECT_EQ(res.edges, ref.edges) << "seed " << seed;
    EXPECT_EQ(res.unclustered, ref.unclustered) << "seed " << seed;
  }
}

TEST(BfsSupercluster, MatchesReferenceOnPhaseOneClusters) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto g = generate_graph(GraphKind::gnp_connected, {.n = 64, .p = 0.05}, 100 + seed).graph;
    auto s = phase_one(g);
    std::mt19937_64 rng(seed);
    std::set<std::uint32_t> pop;
    for (std::uint32_t k = 0; k < s.p.size(); ++k)
      if (rng() % 3 != 0) pop.insert(k);
    if (pop.empty()) pop.insert(0);
    auto delta = 2 * s.q;
    auto R1 = radius_sequence(delta, 2).at(1);
    std::set<std::uint32_t> q;
    supergraph_ruling_set(g, s.h, s.p, pop, {s.q, 2}, R1, &q);
    auto vg = build_cluster_graph(s.p, pop, g);
    auto h = s.h;
    auto res = bfs_supercluster(g, s.p, vg, pop, q, delta, h, 1);
    auto ref = reference_bfs_supercluster(s.p, vg, q, delta, 1);
    EXPECT_EQ(res.next, ref.next) << "seed " << seed;
    EXPECT_EQ(res.edges, ref.edges) << "seed " << seed;
    auto R2 = radius_sequence(delta, 2).at(2);
    for (const auto& c : res.next.clusters) {
      auto v = verify_cluster_tree(c, h, R2);
      EXPECT_TRUE(v.ok) << v.name << " " << v.detail;
    }
  }
}
