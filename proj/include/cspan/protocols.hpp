#pragma once

// Per-phase sub-protocols run on NodeState. Each is a NodeProgram run under a
// fixed worst-case schedule that every vertex can compute from n and the
// construction parameters.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "cspan/node_state.hpp"
#include "cspan/sim/simulator.hpp"
#include "cspan/sim/tree_cast.hpp"

namespace cspan::proto {

using sim::Incoming;
using sim::Message;
using sim::NodeContext;
using sim::Outbox;
using sim::Round;

inline std::optional<Round> next_if(bool busy, Round now) {
  return busy ? std::optional<Round>(now + 1) : std::nullopt;
}

/// Center sends its ID down the tree; members adopt it. R rounds.
class CenterDowncast {
 public:
  explicit CenterDowncast(NodeState& s) : s_(&s) {}

  void step(const NodeContext& ctx, std::span<const Incoming> in, Outbox& out) {
    if (!s_->in_p) return;
    if (ctx.round == 0 && s_->is_center()) {
      for (auto p : s_->tree.children) out.send(p, Message(kCenter, {s_->self}));
      return;
    }
    for (const auto& m : in)
      if (m.msg.tag == kCenter && s_->tree.parent == m.port) {
        s_->center = m.msg.id(0);
        for (auto p : s_->tree.children) out.send(p, Message(kCenter, {s_->center}));
      }
  }
  std::optional<Round> next_wake(Round) const { return std::nullopt; }

 private:
  NodeState* s_;
};

/// One round: every P_i vertex tells its neighbors its center and, in the
/// second variant, whether its cluster is popular.
class Exchange {
 public:
  Exchange(NodeState& s, bool with_popular) : s_(&s), with_popular_(with_popular) {}

  void step(const NodeContext& ctx, std::span<const Incoming> in, Outbox& out) {
    if (ctx.round == 0) {
      if (!with_popular_) s_->nbr_center.assign(s_->nbr.size(), std::nullopt);
      s_->nbr_popular.assign(s_->nbr.size(), 0);
      if (s_->in_p) {
        if (with_popular_)
          out.broadcast(Message(kExchangePopular, {s_->center}, s_->popular ? 1 : 0));
        else
          out.broadcast(Message(kExchange, {s_->center}));
      }
      return;
    }
    for (const auto& m : in) {
      if (m.msg.tag == kExchange) s_->nbr_center[m.port] = m.msg.id(0);
      if (m.msg.tag == kExchangePopular) {
        if (s_->nbr_center[m.port] != m.msg.id(0)) throw ModelError("neighbor changed cluster within a phase");
        s_->nbr_popular[m.port] = *m.msg.scalar != 0;
      }
    }
  }
  std::optional<Round> next_wake(Round) const { return std::nullopt; }

 private:
  NodeState* s_;
  bool with_popular_;
};

/// Number of distinct foreign clusters among a vertex's neighbors.
inline std::size_t foreign_cluster_count(const NodeState& s) {
  std::set<VertexId> seen;
  for (std::uint32_t p = 0; p < s.nbr.size(); ++p)
    if (s.foreign_port(p)) seen.insert(*s.nbr_center[p]);
  return seen.size();
}

/// A vertex is popular when it sees at least `threshold` foreign clusters;
/// a cluster is popular when some member is. OR-convergecast, R rounds.
class PopularOrUp {
 public:
  PopularOrUp(NodeState& s, std::uint64_t threshold) : s_(&s), threshold_(threshold) {}

  void step(const NodeContext& ctx, std::span<const Incoming> in, Outbox& out) {
    if (!s_->in_p) return;
    bool hit = ctx.round == 0 && foreign_cluster_count(*s_) >= threshold_;
    for (const auto& m : in) hit = hit || (m.msg.tag == kPopularUp && s_->tree.is_child_port(m.port));
    if (!hit || sent_) return;
    sent_ = true;
    if (s_->is_center()) s_->popular = true;
    else out.send(*s_->tree.parent, Message(kPopularUp));
  }
  std::optional<Round> next_wake(Round) const { return std::nullopt; }

 private:
  NodeState* s_;
  std::uint64_t threshold_;
  bool sent_ = false;
};

/// Popular Clusters Detection: every member reports ⟨foreign center, itself⟩
/// for each foreign neighbor cluster; relays deduplicate by center and keep at
/// most `cap`. The center ends with its list and is popular iff the list
/// reached the cap. cap + R rounds.
class PopularUpcast {
 public:
  PopularUpcast(NodeState& s, std::uint64_t cap) : s_(&s), cap_(cap), relay_(cap) {}

  void step(const NodeContext& ctx, std::span<const Incoming> in, Outbox& out) {
    if (!s_->in_p) return;
    if (ctx.round == 0) {
      std::set<VertexId> foreign;
      for (std::uint32_t p = 0; p < s_->nbr.size(); ++p)
        if (s_->foreign_port(p)) foreign.insert(*s_->nbr_center[p]);
      for (auto c : foreign) relay_.offer(Message(kItem, {c, s_->self}));
    }
    for (const auto& m : in)
      if (m.msg.tag == kItem && s_->tree.is_child_port(m.port)) relay_.offer(m.msg);
    if (s_->is_center()) {
      s_->knowledge.clear();
      for (const auto& m : relay_.saved()) s_->knowledge.emplace_back(m.id(0), m.id(1));
      s_->popular = relay_.saved().size() >= cap_;
    } else {
      relay_.flush(s_->tree, out);
    }
  }
  std::optional<Round> next_wake(Round now) const { return next_if(!s_->is_center() && !relay_.idle(), now); }

  std::size_t stored() const { return relay_.saved().size(); }

 private:
  NodeState* s_;
  std::uint64_t cap_;
  sim::UpcastRelay relay_;
};

/// Center sends its popularity down the tree. R rounds.
class PopularDowncast {
 public:
  explicit PopularDowncast(NodeState& s) : s_(&s) {}

  void step(const NodeContext& ctx, std::span<const Incoming> in, Outbox& out) {
    if (!s_->in_p) return;
    if (ctx.round == 0) {
      if (!s_->is_center()) s_->popular = false;
      else
        for (auto p : s_->tree.children) out.send(p, Message(kPopularDown, {}, s_->popular ? 1 : 0));
      return;
    }
    for (const auto& m : in)
      if (m.msg.tag == kPopularDown && s_->tree.parent == m.port) {
        s_->popular = *m.msg.scalar != 0;
        for (auto p : s_->tree.children) out.send(p, m.msg);
      }
  }
  std::optional<Round> next_wake(Round) const { return std::nullopt; }

 private:
  NodeState* s_;
};

/// Every member of a leaving cluster adds one edge to each neighboring
/// cluster, to its smallest-ID neighbor there. One round.
class InterconnectVertexwise {
 public:
  InterconnectVertexwise(NodeState& s, bool leaving) : s_(&s), leaving_(leaving) {}

  void step(const NodeContext& ctx, std::span<const Incoming>, Outbox& out) {
    if (ctx.round != 0 || !s_->in_p || !leaving_) return;
    std::set<VertexId> done;
    for (std::uint32_t p = 0; p < s_->nbr.size(); ++p) {  // ports ascend by neighbor ID
      if (!s_->foreign_port(p) || !done.insert(*s_->nbr_center[p]).second) continue;
      out.send(p, Message(kAdd));
      s_->added.push_back({Edge(s_->self, s_->nbr[p]), s_->self, EdgeKind::interconnect});
    }
  }
  std::optional<Round> next_wake(Round) const { return std::nullopt; }

 private:
  NodeState* s_;
  bool leaving_;
};

/// The center of a leaving cluster downcasts ⟨r_C', y⟩ for each known
/// neighboring center; the named witness y adds an edge into C', to its
/// smallest-ID neighbor there. Edges are charged to the center.
/// m + R + 1 rounds for m known neighbors.
class InterconnectCenterwise {
 public:
  InterconnectCenterwise(NodeState& s, bool leaving) : s_(&s), leaving_(leaving) {}

  void step(const NodeContext& ctx, std::span<const Incoming> in, Outbox& out) {
    if (!s_->in_p || !leaving_) return;
    if (ctx.round == 0 && s_->is_center())
      for (auto [c, y] : s_->knowledge) {
        Message m(kInterDown, {c, y});
        if (y == s_->self) act(m, out);
        relay_.push(m);
      }
    for (const auto& m : in)
      if (m.msg.tag == kInterDown && s_->tree.parent == m.port) {
        relay_.push(m.msg);
        if (m.msg.id(1) == s_->self) act(m.msg, out);
      }
    relay_.flush(s_->tree, out);
  }
  std::optional<Round> next_wake(Round now) const { return next_if(!relay_.idle(), now); }

 private:
  void act(const Message& m, Outbox& out) {
    for (std::uint32_t p = 0; p < s_->nbr.size(); ++p)
      if (s_->foreign_port(p) && *s_->nbr_center[p] == m.id(0)) {
        out.send(p, Message(kAdd));
        s_->added.push_back({Edge(s_->self, s_->nbr[p]), s_->center, EdgeKind::interconnect});
        return;
      }
    throw ModelError("witness has no neighbor in the named cluster");
  }

  NodeState* s_;
  bool leaving_;
  sim::DowncastRelay relay_;
};

}  // namespace cspan::proto
