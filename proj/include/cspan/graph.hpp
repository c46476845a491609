#pragma once

// Undirected, unweighted, connected host graphs and canonical edge sets.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cspan/errors.hpp"

namespace cspan {

struct VertexId {
  std::uint32_t value = 0;

  constexpr VertexId() = default;
  constexpr explicit VertexId(std::uint32_t v) : value(v) {}

  constexpr bool valid() const { return value != 0; }
  constexpr auto operator<=>(const VertexId&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, VertexId v) { return os << v.value; }

/// Dense position of a vertex inside a Graph. Index order equals ID order.
using Index = std::uint32_t;

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Unordered edge stored with the smaller endpoint first.
struct Edge {
  VertexId u;
  VertexId v;

  constexpr Edge() = default;
  constexpr Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  constexpr auto operator<=>(const Edge&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Edge& e) {
  return os << '(' << e.u << ',' << e.v << ')';
}

struct IdRange {
  VertexId lo;
  VertexId hi;

  std::uint64_t width() const { return std::uint64_t{hi.value} - lo.value + 1; }
};

/// Set of canonical edges with deterministic (lexicographic) iteration order.
class EdgeSet {
 public:
  EdgeSet() = default;
  EdgeSet(std::initializer_list<Edge> edges) : edges_(edges) {}
  template <class It>
  EdgeSet(It first, It last) : edges_(first, last) {}

  bool insert(Edge e) { return edges_.insert(e).second; }
  bool erase(Edge e) { return edges_.erase(e) > 0; }
  bool contains(Edge e) const { return edges_.count(e) > 0; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }

  bool operator==(const EdgeSet&) const = default;

 private:
  std::set<Edge> edges_;
};

class Graph {
 public:
  Graph() = default;

  /// Builds a graph from explicit vertices and edges. Every endpoint must be
  /// listed in `vertices`. Throws ModelError on any model violation.
  static Graph from_edges(std::vector<VertexId> vertices, const std::vector<Edge>& edges) {
    Graph g;
    std::sort(vertices.begin(), vertices.end());
    if (vertices.empty()) throw ModelError("graph has no vertices");
    if (!vertices.front().valid()) throw ModelError("vertex IDs must be positive");
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
      throw ModelError("duplicate vertex ID");
    g.ids_ = std::move(vertices);
    g.adj_.assign(g.ids_.size(), {});

    std::set<Edge> seen;
    for (const auto& raw : edges) {
      if (raw.u == raw.v) throw ModelError("self-loop at vertex " + std::to_string(raw.u.value));
      Edge e(raw.u, raw.v);
      if (!seen.insert(e).second)
        throw ModelError("duplicate edge " + std::to_string(e.u.value) + " " +
                         std::to_string(e.v.value));
      auto a = g.index_of(e.u);
      auto b = g.index_of(e.v);
      if (!a || !b) throw ModelError("edge endpoint is not a listed vertex");
      g.adj_[*a].push_back(*b);
      g.adj_[*b].push_back(*a);
    }
    g.edge_count_ = seen.size();
    g.finalize();
    if (!g.connected()) throw ModelError("graph is disconnected");
    return g;
  }

  /// Vertices are exactly the edge endpoints.
  static Graph from_edges(const std::vector<Edge>& edges) {
    std::vector<VertexId> vs;
    for (const auto& e : edges) {
      vs.push_back(e.u);
      vs.push_back(e.v);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return from_edges(std::move(vs), edges);
  }

  std::size_t vertex_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const VertexId> vertices() const { return ids_; }
  VertexId id(Index i) const { return ids_[i]; }

  std::optional<Index> index_of(VertexId v) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) return std::nullopt;
    return static_cast<Index>(it - ids_.begin());
  }

  Index at(VertexId v) const {
    auto i = index_of(v);
    if (!i) throw ModelError("unknown vertex " + std::to_string(v.value));
    return *i;
  }

  /// Neighbors of `i` in ascending order; position in this span is the port.
  std::span<const Index> neighbors(Index i) const { return adj_[i]; }
  std::span<const VertexId> neighbor_ids(Index i) const { return adj_ids_[i]; }
  std::size_t degree(Index i) const { return adj_[i].size(); }

  /// Port of `to` at vertex `from`, if adjacent.
  std::optional<std::uint32_t> port_of(Index from, Index to) const {
    const auto& a = adj_[from];
    auto it = std::lower_bound(a.begin(), a.end(), to);
    if (it == a.end() || *it != to) return std::nullopt;
    return static_cast<std::uint32_t>(it - a.begin());
  }

  /// Port at the far end of (i, port) that leads back to i.
  std::uint32_t reverse_port(Index i, std::uint32_t port) const { return reverse_[i][port]; }

  bool has_edge(VertexId a, VertexId b) const {
    auto ia = index_of(a);
    auto ib = index_of(b);
    return ia && ib && port_of(*ia, *ib).has_value();
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Index i = 0; i < adj_.size(); ++i)
      for (Index j : adj_[i])
        if (i < j) out.emplace_back(ids_[i], ids_[j]);
    return out;
  }

  EdgeSet edge_set() const {
    auto e = edges();
    return EdgeSet(e.begin(), e.end());
  }

  IdRange id_range() const { return {ids_.front(), ids_.back()}; }

  bool is_tree() const { return edge_count_ + 1 == ids_.size(); }

 private:
  void finalize() {
    adj_ids_.assign(adj_.size(), {});
    reverse_.assign(adj_.size(), {});
    for (Index i = 0; i < adj_.size(); ++i) {
      std::sort(adj_[i].begin(), adj_[i].end());
      for (Index j : adj_[i]) adj_ids_[i].push_back(ids_[j]);
    }
    for (Index i = 0; i < adj_.size(); ++i) {
      reverse_[i].resize(adj_[i].size());
      for (std::uint32_t p = 0; p < adj_[i].size(); ++p) reverse_[i][p] = *port_of(adj_[i][p], i);
    }
  }

  bool connected() const {
    std::vector<char> seen(ids_.size(), 0);
    std::vector<Index> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      Index x = stack.back();
      stack.pop_back();
      for (Index y : adj_[x])
        if (!seen[y]) {
          seen[y] = 1;
          ++count;
          stack.push_back(y);
        }
    }
    return count == ids_.size();
  }

  std::vector<VertexId> ids_;
  std::vector<std::vector<Index>> adj_;
  std::vector<std::vector<VertexId>> adj_ids_;
  std::vector<std::vector<std::uint32_t>> reverse_;
  std::size_t edge_count_ = 0;
};

/// Reads "u v" pairs, one per line. '#' starts a comment; blank lines are skipped.
inline std::vector<Edge> parse_edge_list(std::istream& in) {
  std::vector<Edge> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long a = 0;
    long long b = 0;
    if (!(ls >> a)) {
      std::string rest;
      ls.clear();
      if (ls >> rest) throw ParseError("line " + std::to_string(lineno) + ": expected two integers");
      continue;
    }
    std::string extra;
    if (!(ls >> b) || (ls >> extra))
      throw ParseError("line " + std::to_string(lineno) + ": expected two integers");
    if (a <= 0 || b <= 0 || a > std::numeric_limits<std::uint32_t>::max() ||
        b > std::numeric_limits<std::uint32_t>::max())
      throw ParseError("line " + std::to_string(lineno) + ": vertex IDs must be positive 32-bit");
    auto u = VertexId(static_cast<std::uint32_t>(a));
    auto v = VertexId(static_cast<std::uint32_t>(b));
    if (u == v) throw ModelError("line " + std::to_string(lineno) + ": self-loop");
    raw.push_back({u, v});
  }
  return raw;
}

inline Graph parse_graph(std::istream& in) {
  auto edges = parse_edge_list(in);
  if (edges.empty()) throw ParseError("edge list is empty");
  return Graph::from_edges(edges);
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_graph(in);
}

inline void write_edge_list(std::ostream& out, const EdgeSet& edges) {
  for (const auto& e : edges) out << e.u.value << ' ' << e.v.value << '\n';
}

}  // namespace cspan
