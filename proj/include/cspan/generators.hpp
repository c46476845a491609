#pragma once

// Deterministic test-corpus generators. IDs are 1..n.

#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cspan/graph.hpp"

namespace cspan {

enum class GraphKind { path, cycle, complete, grid, random_tree, gnp_connected };

inline const char* to_string(GraphKind k) {
  switch (k) {
    case GraphKind::path: return "path";
    case GraphKind::cycle: return "cycle";
    case GraphKind::complete: return "complete";
    case GraphKind::grid: return "grid";
    case GraphKind::random_tree: return "random_tree";
    case GraphKind::gnp_connected: return "gnp_connected";
  }
  return "?";
}

inline GraphKind parse_graph_kind(const std::string& s) {
  for (auto k : {GraphKind::path, GraphKind::cycle, GraphKind::complete, GraphKind::grid,
                 GraphKind::random_tree, GraphKind::gnp_connected})
    if (s == to_string(k)) return k;
  throw ParameterError("unknown graph kind '" + s + "'");
}

struct GraphParams {
  std::uint32_t n = 0;
  std::uint32_t rows = 0;  // grid only; n = rows * cols
  std::uint32_t cols = 0;
  double p = 0.0;          // gnp_connected only
};

struct GraphMetadata {
  std::string kind;
  std::uint32_t n = 0;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::size_t edges = 0;
  std::size_t augmented_edges = 0;  // bridging edges added to connect a G(n,p) sample

  bool operator==(const GraphMetadata&) const = default;
};

struct GeneratedGraph {
  Graph graph;
  GraphMetadata metadata;
};

namespace detail {

// Explicit mappings keep outputs identical across standard library vendors.
inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

inline std::vector<VertexId> iota_ids(std::uint32_t n) {
  std::vector<VertexId> v;
  for (std::uint32_t i = 1; i <= n; ++i) v.emplace_back(i);
  return v;
}

}  // namespace detail

inline GeneratedGraph generate_graph(GraphKind kind, GraphParams params, std::uint64_t seed = 0) {
  GraphMetadata meta;
  meta.kind = to_string(kind);
  meta.seed = seed;
  std::vector<Edge> edges;
  std::uint32_t n = params.n;
  auto id = [](std::uint64_t i) { return VertexId(static_cast<std::uint32_t>(i)); };

  switch (kind) {
    case GraphKind::path:
      if (n < 1) throw ParameterError("path needs n >= 1");
      for (std::uint32_t i = 1; i < n; ++i) edges.emplace_back(id(i), id(i + 1));
      break;
    case GraphKind::cycle:
      if (n < 3) throw ParameterError("cycle needs n >= 3");
      for (std::uint32_t i = 1; i < n; ++i) edges.emplace_back(id(i), id(i + 1));
      edges.emplace_back(id(n), id(1));
      break;
    case GraphKind::complete:
      if (n < 1) throw ParameterError("complete needs n >= 1");
      for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = i + 1; j <= n; ++j) edges.emplace_back(id(i), id(j));
      break;
    case GraphKind::grid: {
      if (params.rows == 0 || params.cols == 0) throw ParameterError("grid needs rows, cols >= 1");
      n = params.rows * params.cols;
      meta.rows = params.rows;
      meta.cols = params.cols;
      auto at = [&](std::uint32_t r, std::uint32_t c) { return id(std::uint64_t{r} * params.cols + c + 1); };
      for (std::uint32_t r = 0; r < params.rows; ++r)
        for (std::uint32_t c = 0; c < params.cols; ++c) {
          if (c + 1 < params.cols) edges.emplace_back(at(r, c), at(r, c + 1));
          if (r + 1 < params.rows) edges.emplace_back(at(r, c), at(r + 1, c));
        }
      break;
    }
    case GraphKind::random_tree: {
      if (n < 1) throw ParameterError("random_tree needs n >= 1");
      std::mt19937_64 rng(seed);
      for (std::uint32_t i = 2; i <= n; ++i) edges.emplace_back(id(1 + detail::below(rng, i - 1)), id(i));
      break;
    }
    case GraphKind::gnp_connected: {
      if (n < 1) throw ParameterError("gnp_connected needs n >= 1");
      if (!(params.p > 0.0 && params.p <= 1.0)) throw ParameterError("gnp_connected needs p in (0,1]");
      meta.p = params.p;
      std::mt19937_64 rng(seed);
      for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = i + 1; j <= n; ++j)
          if (detail::unit(rng) < params.p) edges.emplace_back(id(i), id(j));
      // Bridge the components with a random spanning tree over them.
      std::vector<std::uint32_t> comp(n + 1);
      for (std::uint32_t i = 1; i <= n; ++i) comp[i] = i;
      auto find = [&](std::uint32_t x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
      };
      for (const auto& e : edges) comp[find(e.u.value)] = find(e.v.value);
      std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
      for (std::uint32_t i = 1; i <= n; ++i) groups[find(i)].push_back(i);
      std::vector<std::vector<std::uint32_t>> parts;
      for (auto& [root, members] : groups) parts.push_back(std::move(members));
      for (std::size_t k = 1; k < parts.size(); ++k) {
        const auto& earlier = parts[detail::below(rng, k)];
        auto a = earlier[detail::below(rng, earlier.size())];
        auto b = parts[k][detail::below(rng, parts[k].size())];
        edges.emplace_back(id(a), id(b));
        ++meta.augmented_edges;
      }
      break;
    }
  }
  meta.n = n;
  meta.edges = edges.size();
  return {Graph::from_edges(detail::iota_ids(n), edges), meta};
}

/// Parses "kind:key=value,key=value" (the part after "gen:").
inline GeneratedGraph generate_from_spec(const std::string& spec, std::uint64_t seed) {
  auto colon = spec.find(':');
  GraphKind kind = parse_graph_kind(spec.substr(0, colon));
  GraphParams params;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      auto comma = rest.find(',', pos);
      std::string kv = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      pos = comma == std::string::npos ? rest.size() : comma + 1;
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw ParameterError("generator parameter '" + kv + "' lacks '='");
      std::string key = kv.substr(0, eq);
      std::string val = kv.substr(eq + 1);
      try {
        if (key == "n") params.n = static_cast<std::uint32_t>(std::stoul(val));
        else if (key == "rows") params.rows = static_cast<std::uint32_t>(std::stoul(val));
        else if (key == "cols") params.cols = static_cast<std::uint32_t>(std::stoul(val));
        else if (key == "p") params.p = std::stod(val);
        else throw ParameterError("unknown generator parameter '" + key + "'");
      } catch (const std::logic_error& e) {
        if (dynamic_cast<const ParameterError*>(&e)) throw;
        throw ParameterError("bad value for generator parameter '" + key + "'");
      }
    }
  }
  return generate_graph(kind, params, seed);
}

}  // namespace cspan
