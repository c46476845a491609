#pragma once

// The growing spanner H with a charge ledger.

#include <cstdint>
#include <map>
#include <vector>

#include "cspan/graph.hpp"

namespace cspan {

enum class EdgeKind { supercluster, interconnect };

inline const char* to_string(EdgeKind k) { return k == EdgeKind::supercluster ? "supercluster" : "interconnect"; }

struct Charge {
  Edge edge;
  VertexId charged;
  EdgeKind kind = EdgeKind::supercluster;
  std::uint32_t phase = 0;

  bool operator==(const Charge&) const = default;
};

/// Edges of H plus one ledger entry per addition event. Two endpoints may
/// independently add the same edge; H stores it once and the ledger keeps both
/// events, so per-vertex charge counts never undercount.
class SpannerEdgeSet {
 public:
  bool add(const Charge& c) {
    ledger_.push_back(c);
    return edges_.insert(c.edge);
  }

  const EdgeSet& edges() const { return edges_; }
  const std::vector<Charge>& ledger() const { return ledger_; }
  std::size_t size() const { return edges_.size(); }
  bool contains(Edge e) const { return edges_.contains(e); }

  std::map<VertexId, std::uint64_t> charges_per_vertex(EdgeKind kind) const {
    std::map<VertexId, std::uint64_t> out;
    for (const auto& c : ledger_)
      if (c.kind == kind) ++out[c.charged];
    return out;
  }

  /// Phases in which each vertex was charged for anything.
  std::map<VertexId, std::vector<std::uint32_t>> charge_phases() const {
    std::map<VertexId, std::vector<std::uint32_t>> out;
    for (const auto& c : ledger_) {
      auto& ph = out[c.charged];
      if (ph.empty() || ph.back() != c.phase) ph.push_back(c.phase);
    }
    return out;
  }

  std::uint64_t events(EdgeKind kind, std::uint32_t phase) const {
    std::uint64_t k = 0;
    for (const auto& c : ledger_)
      if (c.kind == kind && c.phase == phase) ++k;
    return k;
  }

 private:
  EdgeSet edges_;
  std::vector<Charge> ledger_;
};

}  // namespace cspan
