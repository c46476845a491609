#pragma once

// Depth-δ BFS over the virtual cluster graph from the ruling clusters, run by
// message passing, plus a centralized reference with the same tie-breaking.
//
// Slot 0 (R rounds) tells every member of a root cluster that it has joined.
// Slot k ≥ 1 starts at s_k = R + (k−1)(4R+2):
//   s_k          members joined at level k−1 offer their root across superedges
//   ..s_k+1+R    min-root convergecast in each unjoined cluster
//   s_k+1+R      the center picks the smallest root and sends it down
//   ..s_k+1+3R   min-edge convergecast over offers from that root
//   s_k+1+3R     the center sends the chosen edge down the path to its
//                endpoint, flipping parent pointers; the endpoint attaches to
//                the offering vertex, which learns of its new child by s_{k+1}.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <tuple>
#include <vector>

#include "cspan/cluster.hpp"
#include "cspan/node_state.hpp"
#include "cspan/protocols.hpp"

namespace cspan {

struct BfsSchedule {
  std::uint64_t R = 0;
  std::uint64_t delta = 1;

  sim::Round slot_start(std::uint64_t k) const { return k == 0 ? 0 : R + (k - 1) * (4 * R + 2); }
  sim::Round total() const { return R + delta * (4 * R + 2); }
  /// Slot a message received in round r was sent in.
  std::uint64_t slot_of_receipt(sim::Round r) const {
    sim::Round sent = r - 1;
    return sent < R ? 0 : 1 + (sent - R) / (4 * R + 2);
  }
};

namespace proto {

class BfsSupercluster {
 public:
  BfsSupercluster(NodeState& s, const BfsSchedule& sched, bool ruling_center)
      : s_(&s), sched_(&sched), ruling_center_(ruling_center) {}

  void step(const sim::NodeContext& ctx, std::span<const sim::Incoming> in, sim::Outbox& out) {
    if (!s_->in_p) return;
    const sim::Round r = ctx.round;
    const std::uint64_t R = sched_->R;
    if (r == 0 && s_->is_center() && ruling_center_) {
      s_->joined_level = 0;
      s_->root = s_->self;
      for (auto p : s_->tree.children) out.send(p, sim::Message(kJoin, {s_->self}));
    }
    bool root_improved = false;
    bool edge_improved = false;
    for (const auto& m : in) {
      const auto& msg = m.msg;
      switch (msg.tag) {
        case kJoin:
          if (s_->tree.parent != m.port) break;
          s_->joined_level = 0;
          s_->root = msg.id(0);
          for (auto p : s_->tree.children) out.send(p, msg);
          break;
        case kOffer:
          if (s_->joined_level || !s_->superedge_port(m.port)) break;
          enter_slot(sched_->slot_of_receipt(r));
          offers_.push_back({msg.id(0), Edge(s_->self, s_->nbr[m.port]), m.port});
          root_improved |= improve_root(msg.id(0));
          break;
        case kUpRoot:
          if (s_->joined_level || !s_->tree.is_child_port(m.port)) break;
          enter_slot(sched_->slot_of_receipt(r));
          root_improved |= improve_root(msg.id(0));
          break;
        case kDownRoot:
          if (s_->tree.parent != m.port) break;
          join(static_cast<std::uint32_t>(sched_->slot_of_receipt(r)), msg.id(0));
          for (auto p : s_->tree.children) out.send(p, msg);
          edge_improved |= own_edge();
          break;
        case kUpEdge:
          if (!s_->tree.is_child_port(m.port)) break;
          if (!best_edge_ || Edge(msg.id(0), msg.id(1)) < *best_edge_) {
            best_edge_ = Edge(msg.id(0), msg.id(1));
            best_src_ = m.port;
            edge_improved = true;
          }
          break;
        case kDownEdge:
          if (s_->tree.parent != m.port) break;
          reroot(out);
          break;
        case kChild: {
          auto& ch = s_->tree.children;
          ch.insert(std::upper_bound(ch.begin(), ch.end(), m.port), m.port);
          break;
        }
        default:
          break;
      }
    }
    if (!s_->is_center()) {
      if (root_improved) out.send(*s_->tree.parent, sim::Message(kUpRoot, {*best_root_}));
      if (edge_improved) out.send(*s_->tree.parent, sim::Message(kUpEdge, {best_edge_->u, best_edge_->v}));
    } else {
      auto k = current_slot(r);
      if (k >= 1 && r == sched_->slot_start(k) + 1 + R && !s_->joined_level && best_root_ && slot_ == k) {
        join(static_cast<std::uint32_t>(k), *best_root_);
        for (auto p : s_->tree.children) out.send(p, sim::Message(kDownRoot, {*best_root_}));
        own_edge();
      }
      if (k >= 1 && r == sched_->slot_start(k) + 1 + 3 * R && s_->joined_level == k && !rerooted_) reroot(out);
    }
    if (s_->joined_level && !offered_ && *s_->joined_level < sched_->delta &&
        r == sched_->slot_start(*s_->joined_level + 1)) {
      offered_ = true;
      for (std::uint32_t p = 0; p < s_->nbr.size(); ++p)
        if (!s_->tree.is_tree_port(p)) out.send(p, sim::Message(kOffer, {s_->root}));
    }
  }

  std::optional<sim::Round> next_wake(sim::Round now) const {
    if (!s_->in_p) return std::nullopt;
    std::optional<sim::Round> w;
    auto consider = [&](sim::Round t) {
      if (t > now && (!w || t < *w)) w = t;
    };
    if (s_->joined_level && !offered_ && *s_->joined_level < sched_->delta)
      consider(sched_->slot_start(*s_->joined_level + 1));
    if (s_->is_center() && slot_ >= 1) {
      if (!s_->joined_level && best_root_) consider(sched_->slot_start(slot_) + 1 + sched_->R);
      if (s_->joined_level == slot_ && !rerooted_) consider(sched_->slot_start(slot_) + 1 + 3 * sched_->R);
    }
    return w;
  }

 private:
  struct Offer {
    VertexId root;
    Edge edge;
    std::uint32_t port;
  };

  /// Slot containing round r.
  std::uint64_t current_slot(sim::Round r) const {
    return r < sched_->R ? 0 : 1 + (r - sched_->R) / (4 * sched_->R + 2);
  }

  void enter_slot(std::uint64_t k) {
    if (k == slot_) return;
    slot_ = k;
    offers_.clear();
    best_root_.reset();
  }

  bool improve_root(VertexId x) {
    if (best_root_ && *best_root_ <= x) return false;
    best_root_ = x;
    return true;
  }

  void join(std::uint32_t level, VertexId x) {
    s_->joined_level = level;
    s_->root = x;
    slot_ = level;
  }

  /// Smallest own offer edge from the chosen root.
  bool own_edge() {
    bool improved = false;
    for (const auto& o : offers_)
      if (o.root == s_->root && (!best_edge_ || o.edge < *best_edge_)) {
        best_edge_ = o.edge;
        best_src_.reset();
        improved = true;
      }
    return improved;
  }

  void reroot(sim::Outbox& out) {
    rerooted_ = true;
    auto old_parent = s_->tree.parent;
    auto& ch = s_->tree.children;
    if (best_src_) {
      auto c = *best_src_;
      out.send(c, sim::Message(kDownEdge, {best_edge_->u, best_edge_->v}));
      ch.erase(std::find(ch.begin(), ch.end(), c));
      s_->tree.parent = c;
    } else {
      auto it = std::find_if(offers_.begin(), offers_.end(), [&](const Offer& o) { return o.edge == *best_edge_; });
      out.send(it->port, sim::Message(kChild));
      s_->tree.parent = it->port;
      s_->added.push_back({it->edge, s_->center, EdgeKind::supercluster});
    }
    if (old_parent) ch.insert(std::upper_bound(ch.begin(), ch.end(), *old_parent), *old_parent);
  }

  NodeState* s_;
  const BfsSchedule* sched_;
  bool ruling_center_;
  bool offered_ = false;
  bool rerooted_ = false;
  std::uint64_t slot_ = 0;
  std::vector<Offer> offers_;
  std::optional<VertexId> best_root_;
  std::optional<Edge> best_edge_;
  std::optional<std::uint32_t> best_src_;
};

}  // namespace proto

struct SuperclusterResult {
  ClusterSet next;                         // P_{i+1}
  std::vector<std::uint32_t> unclustered;  // positions in P_i
  std::vector<Charge> edges;               // superclustering edges, charged to the joining cluster's old center
  std::vector<std::optional<std::uint32_t>> level;  // per P_i position
  std::vector<std::optional<std::uint32_t>> pred;   // per P_i position: cluster it attached to
};

/// Centralized BFS with the same tie-breaking: smallest root center, then
/// smallest witness edge. Trees are stitched by re-rooting each joining
/// cluster at the witness endpoint.
inline SuperclusterResult reference_bfs_supercluster(const ClusterSet& p, const VirtualClusterGraph& vg,
                                                     const std::set<std::uint32_t>& q, std::uint64_t delta,
                                                     std::uint32_t phase) {
  const std::size_t m = p.size();
  SuperclusterResult res;
  res.level.assign(m, std::nullopt);
  res.pred.assign(m, std::nullopt);
  std::vector<std::optional<std::uint32_t>> root(m);
  std::vector<std::optional<Edge>> witness(m);
  for (auto c : q) {
    res.level[c] = 0;
    root[c] = c;
  }
  for (std::uint32_t k = 1; k <= delta; ++k) {
    std::vector<std::tuple<std::uint32_t, VertexId, Edge, std::uint32_t>> joins;
    for (std::uint32_t y = 0; y < m; ++y) {
      if (res.level[y]) continue;
      std::optional<std::pair<VertexId, Edge>> best;
      std::uint32_t best_x = 0;
      for (auto x : vg.adjacency[y]) {
        if (res.level[x] != k - 1) continue;
        std::pair<VertexId, Edge> cand{p.clusters[*root[x]].center, *vg.witness(x, y)};
        if (!best || cand < *best) {
          best = cand;
          best_x = x;
        }
      }
      if (best) joins.emplace_back(y, best->first, best->second, best_x);
    }
    for (auto& [y, rc, e, x] : joins) {
      res.level[y] = k;
      root[y] = root[x];
      res.pred[y] = x;
      witness[y] = e;
    }
  }
  std::map<std::uint32_t, Cluster> built;
  for (std::uint32_t y = 0; y < m; ++y) {
    if (!root[y]) {
      res.unclustered.push_back(y);
      continue;
    }
    auto& nc = built[*root[y]];
    nc.center = p.clusters[*root[y]].center;
    const auto& old = p.clusters[y];
    nc.members.insert(nc.members.end(), old.members.begin(), old.members.end());
    auto par = old.parent;
    if (witness[y]) {
      auto e = *witness[y];
      VertexId u = old.contains(e.u) ? e.u : e.v;
      VertexId u2 = u == e.u ? e.v : e.u;
      // Reverse the path u → old center.
      VertexId prev = u2;
      VertexId x = u;
      for (;;) {
        auto it = old.parent.find(x);
        par[x] = prev;
        if (it == old.parent.end()) break;
        prev = x;
        x = it->second;
      }
      res.edges.push_back({e, old.center, EdgeKind::supercluster, phase});
    }
    nc.parent.insert(par.begin(), par.end());
  }
  for (auto& [r, c] : built) {
    std::sort(c.members.begin(), c.members.end());
    res.next.clusters.push_back(std::move(c));
  }
  std::sort(res.next.clusters.begin(), res.next.clusters.end(),
            [](const Cluster& a, const Cluster& b) { return a.center < b.center; });
  res.next.phase = phase + 1;
  std::sort(res.edges.begin(), res.edges.end(), [](const Charge& a, const Charge& b) { return a.edge < b.edge; });
  return res;
}

}  // namespace cspan
