#pragma once

// Stretch measurement of a subgraph H against its host graph.

#include <cstdint>
#include <optional>
#include <string>

#include "cspan/bfs.hpp"
#include "cspan/exact.hpp"
#include "cspan/graph.hpp"
#include "cspan/verdict.hpp"

namespace cspan {

struct StretchReport {
  /// max over (u,v) ∈ E of d_H(u,v); meaningless when `disconnected` is set.
  std::uint64_t per_edge = 0;
  std::optional<Edge> worst_edge;
  std::optional<Edge> disconnected;  // an input edge whose endpoints H separates
  /// max over pairs of d_H/d_G, when measured.
  std::optional<BigRational> all_pairs;

  bool finite() const { return !disconnected; }
  bool operator==(const StretchReport&) const = default;
};

inline void check_subgraph(const Graph& g, const EdgeSet& h) {
  for (const auto& e : h)
    if (!g.has_edge(e.u, e.v))
      throw ModelError("spanner-not-subgraph: edge " + std::to_string(e.u.value) + " " + std::to_string(e.v.value) +
                       " is not in the graph");
}

/// Per-edge stretch by one BFS in H per vertex; all pairs as well when asked.
inline StretchReport measure_stretch(const Graph& g, const EdgeSet& h, bool all_pairs) {
  check_subgraph(g, h);
  StretchReport r;
  auto ah = adjacency_of(g, h);
  auto ag = all_pairs ? adjacency_of(g) : Adjacency{};
  BigRational worst(0);
  if (all_pairs && g.vertex_count() > 1) worst = 1;
  for (Index s = 0; s < g.vertex_count(); ++s) {
    auto dh = bfs(ah, s);
    for (auto t : g.neighbors(s)) {
      if (t < s) continue;
      Edge e(g.id(s), g.id(t));
      if (dh[t] == kUnreachable) {
        if (!r.disconnected) r.disconnected = e;
        continue;
      }
      if (!r.worst_edge || dh[t] > r.per_edge) {
        r.worst_edge = e;
        r.per_edge = dh[t];
      }
    }
    if (all_pairs && !r.disconnected) {
      auto dg = bfs(ag, s);
      for (Index t = s + 1; t < g.vertex_count(); ++t) {
        if (dh[t] == kUnreachable) continue;
        BigRational q(dh[t], dg[t]);
        if (q > worst) worst = q;
      }
    }
  }
  if (all_pairs && !r.disconnected) r.all_pairs = worst;
  return r;
}

inline StretchReport measure_stretch(const Graph& g, const EdgeSet& h) {
  return measure_stretch(g, h, g.vertex_count() <= 64);
}

inline std::string edge_str(Edge e) { return std::to_string(e.u.value) + "-" + std::to_string(e.v.value); }

/// Per-edge stretch against an integer bound; infinite stretch names the edge.
inline Verdict stretch_verdict(const StretchReport& r, const BigInt& bound, const std::string& name = "stretch") {
  if (r.disconnected) return Verdict::fail(name, "infinite stretch: edge " + edge_str(*r.disconnected));
  std::string d = std::to_string(r.per_edge) + " <= " + bound.str();
  if (r.all_pairs) d += ", all pairs " + r.all_pairs->str();
  if (BigInt(r.per_edge) > bound)
    return Verdict::fail(name, std::to_string(r.per_edge) + " > " + bound.str() + " at edge " + edge_str(*r.worst_edge));
  if (r.all_pairs && *r.all_pairs > BigRational(bound))
    return Verdict::fail(name, "all-pairs stretch " + r.all_pairs->str() + " > " + bound.str());
  return Verdict::pass(name, d);
}

}  // namespace cspan
