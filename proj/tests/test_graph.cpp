#include <gtest/gtest.h>

#include <sstream>

#include "cspan/bfs.hpp"
#include "cspan/generators.hpp"

using namespace cspan;

namespace {

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

VertexId V(std::uint32_t v) { return VertexId(v); }

}  // namespace

TEST(LoadGraph, PathOnThreeVertices) {
  auto g = parse("1 2\n2 3");
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_edge(V(2), V(1)));
  EXPECT_FALSE(g.has_edge(V(1), V(3)));
}

TEST(LoadGraph, RejectsDisconnected) { EXPECT_THROW(parse("1 2\n3 4"), ModelError); }

TEST(LoadGraph, RejectsSelfLoop) { EXPECT_THROW(parse("1 1"), ModelError); }

TEST(LoadGraph, RejectsDuplicateEdge) { EXPECT_THROW(parse("1 2\n2 1"), ModelError); }

TEST(LoadGraph, BadLineIsParseErrorWithLineNumber) {
  try {
    parse("1 2\n2 x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse("1 2 3"), ParseError);
  EXPECT_THROW(parse("0 2"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
}

TEST(LoadGraph, CommentsAndBlankLines) {
  auto g = parse("# header\n\n10 20  # trailing\n20 30\n");
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.id_range().lo, V(10));
  EXPECT_EQ(g.id_range().hi, V(30));
  EXPECT_EQ(g.id_range().width(), 21u);
}

TEST(LoadGraph, MissingFile) { EXPECT_THROW(load_graph("/nonexistent/graph.txt"), ParseError); }

TEST(Generate, CompleteFive) {
  auto g = generate_graph(GraphKind::complete, {.n = 5}).graph;
  EXPECT_EQ(g.edge_count(), 10u);
}

TEST(Generate, CycleEight) {
  auto g = generate_graph(GraphKind::cycle, {.n = 8}).graph;
  EXPECT_EQ(g.edge_count(), 8u);
  for (Index i = 0; i < g.vertex_count(); ++i) EXPECT_EQ(g.degree(i), 2u);
}

TEST(Generate, GridShape) {
  auto g = generate_graph(GraphKind::grid, {.rows = 4, .cols = 8}).graph;
  EXPECT_EQ(g.vertex_count(), 32u);
  EXPECT_EQ(g.edge_count(), 4u * 7 + 3u * 8);
}

TEST(Generate, RandomTreeIsTree) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto g = generate_graph(GraphKind::random_tree, {.n = 50}, seed).graph;
    EXPECT_TRUE(g.is_tree());
  }
}

// Frozen on first run; guards generator determinism across builds.
TEST(Generate, GnpFixture) {
  auto a = generate_graph(GraphKind::gnp_connected, {.n = 64, .p = 0.1}, 7);
  auto b = generate_graph(GraphKind::gnp_connected, {.n = 64, .p = 0.1}, 7);
  EXPECT_EQ(a.metadata, b.metadata);
  EXPECT_EQ(a.graph.edges(), b.graph.edges());
  EXPECT_EQ(a.metadata.edges, a.graph.edge_count());
  EXPECT_EQ(a.metadata.edges, 216u);
  EXPECT_EQ(a.metadata.augmented_edges, 0u);
}

TEST(Generate, GnpSparseGetsAugmented) {
  auto a = generate_graph(GraphKind::gnp_connected, {.n = 100, .p = 0.005}, 3);
  EXPECT_GT(a.metadata.augmented_edges, 0u);
  EXPECT_EQ(a.graph.vertex_count(), 100u);
}

TEST(Generate, InvalidParams) {
  EXPECT_THROW(generate_graph(GraphKind::path, {.n = 0}), ParameterError);
  EXPECT_THROW(generate_graph(GraphKind::gnp_connected, {.n = 5, .p = 0.0}), ParameterError);
  EXPECT_THROW(generate_graph(GraphKind::gnp_connected, {.n = 5, .p = 1.5}), ParameterError);
  EXPECT_THROW(generate_graph(GraphKind::cycle, {.n = 2}), ParameterError);
  EXPECT_THROW(generate_from_spec("blob:n=3", 0), ParameterError);
  EXPECT_THROW(generate_from_spec("path:m=3", 0), ParameterError);
  EXPECT_THROW(generate_from_spec("path:n=x", 0), ParameterError);
}

TEST(Generate, FromSpecString) {
  auto g = generate_from_spec("grid:rows=3,cols=5", 0).graph;
  EXPECT_EQ(g.vertex_count(), 15u);
  auto h = generate_from_spec("gnp_connected:n=30,p=0.2", 11);
  EXPECT_EQ(h.metadata.seed, 11u);
}

TEST(Bfs, PathDistances) {
  auto g = parse("1 2\n2 3");
  auto d = bfs_distances(g, std::nullopt, V(1));
  EXPECT_EQ(d, (std::vector<std::uint32_t>{0, 1, 2}));
}

TEST(Bfs, CompleteGraph) {
  auto g = generate_graph(GraphKind::complete, {.n = 5}).graph;
  auto d = bfs_distances(g, std::nullopt, V(3));
  for (Index i = 0; i < 5; ++i) EXPECT_EQ(d[i], i == 2 ? 0u : 1u);
}

TEST(Bfs, CycleMinusOneEdge) {
  auto g = generate_graph(GraphKind::cycle, {.n = 8}).graph;
  EdgeSet h = g.edge_set();
  h.erase(Edge(V(8), V(1)));
  auto d = bfs_distances(g, h, V(8));
  EXPECT_EQ(d[g.at(V(1))], 7u);
}

TEST(Bfs, UnreachableAndUnknown) {
  auto g = parse("1 2\n2 3");
  EdgeSet h{Edge(V(1), V(2))};
  auto d = bfs_distances(g, h, V(1));
  EXPECT_EQ(d[2], kUnreachable);
  EXPECT_THROW(bfs_distances(g, std::nullopt, V(9)), ModelError);
  EXPECT_THROW(bfs_distances(g, EdgeSet{Edge(V(1), V(3))}, V(1)), ModelError);
}

class CorpusProperties : public ::testing::TestWithParam<int> {};

TEST_P(CorpusProperties, SymmetryTriangleAndSubgraphDominance) {
  auto gen = generate_graph(GraphKind::gnp_connected, {.n = 40, .p = 0.1}, GetParam());
  const auto& g = gen.graph;
  for (Index i = 0; i < g.vertex_count(); ++i)
    for (Index j : g.neighbors(i)) EXPECT_TRUE(g.port_of(j, i).has_value());
  auto adj = adjacency_of(g);
  std::vector<std::vector<std::uint32_t>> d;
  for (Index s = 0; s < g.vertex_count(); ++s) d.push_back(bfs(adj, s));
  for (Index a = 0; a < g.vertex_count(); a += 3) {
    EXPECT_EQ(d[a][a], 0u);
    for (Index b = 0; b < g.vertex_count(); b += 5)
      for (Index c = 0; c < g.vertex_count(); c += 7) EXPECT_LE(d[a][c], d[a][b] + d[b][c]);
  }
  // Drop every third edge; distances can only grow.
  EdgeSet h;
  std::size_t k = 0;
  for (auto e : g.edges())
    if (k++ % 3) h.insert(e);
  auto hadj = adjacency_of(g, h);
  for (auto e : g.edges()) {
    auto dh = bfs(hadj, g.at(e.u));
    EXPECT_GE(dh[g.at(e.v)], d[g.at(e.u)][g.at(e.v)]);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, CorpusProperties, ::testing::Range(0, 6));
