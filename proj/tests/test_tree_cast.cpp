#include <gtest/gtest.h>

#include "cspan/bfs.hpp"
#include "cspan/generators.hpp"
#include "cspan/sim/tree_cast.hpp"

using namespace cspan;
using namespace cspan::sim;

namespace {

VertexId V(std::uint32_t v) { return VertexId(v); }

/// The whole graph as one cluster, BFS tree from `root`.
Cluster bfs_cluster(const Graph& g, VertexId root) {
  Cluster c{root, {g.vertices().begin(), g.vertices().end()}, {}};
  auto d = bfs_distances(g, std::nullopt, root);
  for (Index v = 0; v < g.vertex_count(); ++v) {
    if (g.id(v) == root) continue;
    for (Index w : g.neighbors(v))
      if (d[w] + 1 == d[v]) {
        c.parent[g.id(v)] = g.id(w);
        break;
      }
  }
  return c;
}

std::vector<Message> items(std::initializer_list<std::uint32_t> keys) {
  std::vector<Message> out;
  for (auto k : keys) out.emplace_back(7, std::initializer_list<VertexId>{V(k)});
  return out;
}

}  // namespace

TEST(Downcast, OneMessageStar) {
  std::vector<Edge> e{{V(1), V(2)}, {V(1), V(3)}, {V(1), V(4)}};
  auto g = Graph::from_edges(e);
  auto c = bfs_cluster(g, V(1));
  auto r = pipelined_downcast(g, c, {Message(3)});
  EXPECT_EQ(r.rounds, 1u);
  for (auto v : {2u, 3u, 4u}) EXPECT_EQ(r.received[V(v)].size(), 1u);
}

TEST(Downcast, FourMessagesPathDepthThree) {
  auto g = generate_graph(GraphKind::path, {.n = 4}).graph;
  auto c = bfs_cluster(g, V(1));
  std::vector<Message> m;
  for (int k = 0; k < 4; ++k) m.emplace_back(3, std::initializer_list<VertexId>{}, k);
  auto r = pipelined_downcast(g, c, m);
  EXPECT_LE(r.rounds, 7u);
  EXPECT_EQ(r.received[V(4)], m);
}

TEST(Downcast, NoMessages) {
  auto g = generate_graph(GraphKind::path, {.n = 4}).graph;
  auto r = pipelined_downcast(g, bfs_cluster(g, V(2)), {});
  EXPECT_EQ(r.rounds, 0u);
}

TEST(Upcast, BelowCap) {
  // 1 - 2 - {3, 4}, rooted at 1: depth 2.
  std::vector<Edge> e{{V(1), V(2)}, {V(2), V(3)}, {V(2), V(4)}};
  auto g = Graph::from_edges(e);
  auto r = pipelined_upcast(g, bfs_cluster(g, V(1)), {{V(3), items({100, 101})}, {V(4), items({102})}}, 10);
  EXPECT_EQ(r.root_knowledge[V(1)].size(), 3u);
  EXPECT_LE(r.rounds, 10u + 2);
}

TEST(Upcast, CapBinds) {
  std::vector<Edge> e{{V(1), V(2)}, {V(2), V(3)}, {V(2), V(4)}};
  auto g = Graph::from_edges(e);
  auto r = pipelined_upcast(g, bfs_cluster(g, V(1)), {{V(3), items({100, 101, 102})}, {V(4), items({103, 104})}}, 2);
  EXPECT_EQ(r.root_knowledge[V(1)].size(), 2u);
  for (auto [v, k] : r.stored) EXPECT_LE(k, 2u);
}

TEST(Upcast, DuplicatesCountedOnce) {
  std::vector<Edge> e{{V(1), V(2)}, {V(2), V(3)}, {V(2), V(4)}};
  auto g = Graph::from_edges(e);
  auto r = pipelined_upcast(g, bfs_cluster(g, V(1)), {{V(3), items({100})}, {V(4), items({100})}}, 10);
  EXPECT_EQ(r.root_knowledge[V(1)].size(), 1u);
  EXPECT_EQ(r.stored[V(2)], 1u);
}

class CastBounds : public ::testing::TestWithParam<int> {};

TEST_P(CastBounds, RoundsWithinLengthPlusDepth) {
  int seed = GetParam();
  auto g = generate_graph(GraphKind::random_tree, {.n = 30}, seed).graph;
  auto c = bfs_cluster(g, V(1 + seed % 30));
  auto depth = *c.depth();
  for (std::uint64_t m : {0u, 1u, 3u, 9u}) {
    std::vector<Message> msgs;
    for (std::uint64_t k = 0; k < m; ++k) msgs.emplace_back(3, std::initializer_list<VertexId>{}, k);
    auto r = pipelined_downcast(g, c, msgs);
    EXPECT_LE(r.rounds, m + depth);
    for (auto& [v, got] : r.received) EXPECT_EQ(got, msgs);
  }
  for (std::uint64_t cap : {1u, 2u, 5u, 40u}) {
    std::map<VertexId, std::vector<Message>> it;
    std::set<std::uint32_t> distinct;
    for (auto v : g.vertices()) {
      std::uint32_t k = 1000 + (v.value * 7 + seed) % 13;
      it[v] = items({k});
      distinct.insert(k);
    }
    auto r = pipelined_upcast(g, c, it, cap);
    EXPECT_LE(r.rounds, cap + depth);
    EXPECT_EQ(r.root_knowledge[c.center].size(), std::min<std::size_t>(cap, distinct.size()));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, CastBounds, ::testing::Range(0, 10));

TEST(Casts, ConcurrentClustersDoNotInterfere) {
  auto g = generate_graph(GraphKind::path, {.n = 6}).graph;
  Cluster a{V(1), {V(1), V(2), V(3)}, {{V(2), V(1)}, {V(3), V(2)}}};
  Cluster b{V(6), {V(4), V(5), V(6)}, {{V(5), V(6)}, {V(4), V(5)}}};
  std::vector<Cluster> cs{a, b};
  auto r = pipelined_downcast(g, cs, {{Message(1), Message(2)}, {Message(5)}});
  EXPECT_EQ(r.received[V(3)].size(), 2u);
  EXPECT_EQ(r.received[V(4)], std::vector<Message>{Message(5)});
  EXPECT_LE(r.rounds, 4u);
}
