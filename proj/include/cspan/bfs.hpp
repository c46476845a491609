#pragma once

// Hop-distance oracle over a graph or over a subgraph (V, H).

#include <cstdint>
#include <optional>
#include <vector>

#include "cspan/graph.hpp"

namespace cspan {

using Adjacency = std::vector<std::vector<Index>>;

inline Adjacency adjacency_of(const Graph& g) {
  Adjacency adj(g.vertex_count());
  for (Index i = 0; i < g.vertex_count(); ++i) adj[i].assign(g.neighbors(i).begin(), g.neighbors(i).end());
  return adj;
}

/// Adjacency of (V(g), h). Throws ModelError if h names a non-edge of g.
inline Adjacency adjacency_of(const Graph& g, const EdgeSet& h) {
  Adjacency adj(g.vertex_count());
  for (const auto& e : h) {
    auto a = g.index_of(e.u);
    auto b = g.index_of(e.v);
    if (!a || !b || !g.port_of(*a, *b))
      throw ModelError("edge " + std::to_string(e.u.value) + " " + std::to_string(e.v.value) +
                       " is not in the host graph");
    adj[*a].push_back(*b);
    adj[*b].push_back(*a);
  }
  return adj;
}

/// Distances from `source`, indexed by vertex index; kUnreachable if none.
inline std::vector<std::uint32_t> bfs(const Adjacency& adj, Index source) {
  std::vector<std::uint32_t> dist(adj.size(), kUnreachable);
  std::vector<Index> queue;
  queue.reserve(adj.size());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Index x = queue[head];
    for (Index y : adj[x])
      if (dist[y] == kUnreachable) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
  }
  return dist;
}

/// Exact hop distances from `source` in g, or in (V, restricted_to) when given.
inline std::vector<std::uint32_t> bfs_distances(const Graph& g, const std::optional<EdgeSet>& restricted_to,
                                                VertexId source) {
  Index s = g.at(source);
  return restricted_to ? bfs(adjacency_of(g, *restricted_to), s) : bfs(adjacency_of(g), s);
}

}  // namespace cspan
