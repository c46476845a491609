#pragma once

// Local state each vertex carries across the sub-protocols of a construction.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cspan/graph.hpp"
#include "cspan/sim/tree_cast.hpp"
#include "cspan/spanner_edges.hpp"

namespace cspan::proto {

enum Tag : std::uint16_t {
  kCenter = 1,
  kExchange,
  kPopularUp,
  kPopularDown,
  kExchangePopular,
  kItem,
  kKnockDown,
  kKnockCross,
  kKnockUp,
  kJoin,
  kOffer,
  kUpRoot,
  kDownRoot,
  kUpEdge,
  kDownEdge,
  kChild,
  kInterDown,
  kAdd,
};

struct Addition {
  Edge edge;
  VertexId charged;
  EdgeKind kind = EdgeKind::supercluster;
};

struct NodeState {
  VertexId self;
  std::vector<VertexId> nbr;  // by port

  // Membership in the current collection P_i.
  bool in_p = false;
  VertexId center;
  sim::TreeLinks tree;

  // Learned by the exchanges of the current phase, by port.
  std::vector<std::optional<VertexId>> nbr_center;
  std::vector<char> nbr_popular;
  bool popular = false;  // own cluster

  // Center only: learned list of (foreign center, witness in own cluster).
  std::vector<std::pair<VertexId, VertexId>> knowledge;
  bool ruling = false;

  // Superclustering outcome.
  std::optional<std::uint32_t> joined_level;
  VertexId root;

  std::vector<Addition> added;

  bool is_center() const { return in_p && center == self; }

  /// Port leads to a different P_i cluster.
  bool foreign_port(std::uint32_t p) const { return in_p && nbr_center[p] && *nbr_center[p] != center; }

  /// Port carries a superedge of the virtual cluster graph.
  bool superedge_port(std::uint32_t p) const { return foreign_port(p) && (popular || nbr_popular[p]); }

  void reset_phase() {
    nbr_center.assign(nbr.size(), std::nullopt);
    nbr_popular.assign(nbr.size(), 0);
    popular = false;
    knowledge.clear();
    ruling = false;
    joined_level.reset();
    root = VertexId();
    added.clear();
  }
};

}  // namespace cspan::proto
