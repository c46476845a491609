#pragma once

// Deterministic (c+1, c·q)-ruling sets by ID-block splitting with knock-out
// floods, on the base graph or on a virtual cluster graph.
//
// The block recursion is unrolled into digits: with t blocks per level, the
// offset id−a is written in base t, and level j merges blocks that agree on
// all digits above j. Levels run from the least significant digit up. In
// step (j, d) every surviving candidate whose digit j equals d floods a
// knock-out to depth c, and any candidate with a larger digit j that hears it
// drops out. Floods from different groups share the channel untagged; this is
// safe because a knock-out always comes from a vertex that survives the level.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cspan/bfs.hpp"
#include "cspan/cluster.hpp"
#include "cspan/exact.hpp"
#include "cspan/node_state.hpp"
#include "cspan/protocols.hpp"
#include "cspan/sim/simulator.hpp"
#include "cspan/verdict.hpp"

namespace cspan {

struct RulingParams {
  std::uint32_t q = 1;
  std::uint32_t c = 2;
};

struct RulingSet {
  std::set<VertexId> members;  // vertex IDs, or cluster-center IDs on a cluster graph
  sim::Round rounds = 0;
};

struct KnockoutPlan {
  std::uint64_t R = 0;
  std::uint64_t c = 2;
  std::uint64_t t = 2;
  std::uint32_t levels = 0;
  std::uint64_t lo = 0;
  std::uint64_t width = 1;
  std::vector<std::uint64_t> tpow;                             // t^j
  std::vector<std::pair<std::uint32_t, std::uint64_t>> steps;  // (level, digit)

  sim::Round slot() const { return 2 * R + 1; }
  std::uint64_t virtual_rounds() const { return steps.size() * c; }
  sim::Round schedule() const { return virtual_rounds() * slot(); }
  std::uint64_t digit(VertexId v, std::uint32_t level) const { return ((v.value - lo) / tpow[level]) % t; }
};

/// Blocks per level t is the least integer ≥ 2 with t^q ≥ width of the ID
/// range; the number of levels is the least L with t^L ≥ width (so L ≤ q).
/// Digit values that no ID in the range can take are never scheduled.
inline KnockoutPlan make_knockout_plan(IdRange range, RulingParams params, std::uint64_t R) {
  if (params.q < 1) throw ParameterError("ruling parameter q must be at least 1");
  if (params.c < 2) throw ParameterError("ruling parameter c must be at least 2");
  KnockoutPlan plan;
  plan.R = R;
  plan.c = params.c;
  plan.lo = range.lo.value;
  plan.width = range.width();
  if (plan.width <= 1) return plan;
  plan.t = std::max<std::uint64_t>(2, ceil_power(plan.width, Rational(1, params.q)));
  std::uint64_t pw = 1;
  while (pw < plan.width) {
    plan.tpow.push_back(pw);
    pw *= plan.t;
  }
  plan.levels = static_cast<std::uint32_t>(plan.tpow.size());
  for (std::uint32_t j = 0; j < plan.levels; ++j) {
    std::uint64_t max_digit = std::min(plan.t - 1, (plan.width - 1) / plan.tpow[j]);
    for (std::uint64_t d = 0; d < max_digit; ++d) plan.steps.emplace_back(j, d);
  }
  return plan;
}

namespace proto {

/// Knock-out protocol on clusters. Each virtual round takes 2R+1 real rounds:
/// the center's value goes down its tree, every member relays it across
/// foreign edges, and the best value heard comes back up by max-convergecast.
/// With R = 0 and every vertex its own cluster this is plain flooding, and a
/// vertex sends the same message on every port.
class Knockout {
 public:
  Knockout(NodeState& s, const KnockoutPlan& plan, bool candidate, bool base_graph)
      : s_(&s), plan_(&plan), alive_(candidate), candidate_(candidate), base_(base_graph) {}

  void step(const sim::NodeContext& ctx, std::span<const sim::Incoming> in, sim::Outbox& out) {
    if (!s_->in_p) return;
    const sim::Round r = ctx.round;
    const sim::Round L = plan_->slot();
    std::optional<std::int64_t> down;
    std::int64_t heard = -1;
    for (const auto& m : in) {
      auto v = *m.msg.scalar;
      if (m.msg.tag == kKnockDown && s_->tree.parent == m.port) down = v;
      else if (m.msg.tag == kKnockCross && accepts(m.port)) heard = std::max(heard, v);
      else if (m.msg.tag == kKnockUp && s_->tree.is_child_port(m.port)) heard = std::max(heard, v);
    }
    if (s_->is_center()) {
      recv_best_ = std::max(recv_best_, heard);
      if (r % L == 0) {
        std::uint64_t v = r / L;
        if (v >= 1) finalize(v - 1);
        if (v < plan_->virtual_rounds()) start(v, out);
      }
      return;
    }
    if (down) send_value(*down, out);
    if (heard >= 0) {
      std::uint64_t slot = (r - 1) / L;
      if (slot != up_slot_) {
        up_slot_ = slot;
        up_sent_ = -1;
      }
      if (heard > up_sent_) {
        out.send(*s_->tree.parent, sim::Message(kKnockUp, {}, heard));
        up_sent_ = heard;
      }
    }
  }

  std::optional<sim::Round> next_wake(sim::Round now) const {
    if (!s_->is_center()) return std::nullopt;
    const sim::Round L = plan_->slot();
    sim::Round next = (now / L + 1) * L;
    if (next > plan_->schedule()) return std::nullopt;
    return next;
  }

  bool in_ruling_set() const { return candidate_ && alive_; }

 private:
  bool accepts(std::uint32_t port) const { return base_ || s_->superedge_port(port); }

  void send_value(std::int64_t v, sim::Outbox& out) {
    for (auto p : s_->tree.children) out.send(p, sim::Message(kKnockDown, {}, v));
    for (std::uint32_t p = 0; p < s_->nbr.size(); ++p)
      if (!s_->tree.is_tree_port(p)) out.send(p, sim::Message(kKnockCross, {}, v));
  }

  void finalize(std::uint64_t v) {
    auto k = v / plan_->c;
    auto [level, d] = plan_->steps[k];
    if (recv_best_ >= 0) {
      if (alive_ && plan_->digit(s_->self, level) > d) alive_ = false;
      bool same_step = (v + 1) < plan_->virtual_rounds() && (v + 1) / plan_->c == k;
      if (recv_best_ > 0 && same_step) pending_ = std::max(pending_, recv_best_ - 1);
    }
    recv_best_ = -1;
  }

  void start(std::uint64_t v, sim::Outbox& out) {
    auto k = v / plan_->c;
    auto [level, d] = plan_->steps[k];
    std::int64_t val = -1;
    if (v % plan_->c == 0) {
      fwd_max_ = -1;
      pending_ = -1;
      if (alive_ && plan_->digit(s_->self, level) == d) val = static_cast<std::int64_t>(plan_->c) - 1;
    } else {
      val = pending_;
    }
    pending_ = -1;
    if (val >= 0 && val > fwd_max_) {
      send_value(val, out);
      fwd_max_ = val;
    }
  }

  NodeState* s_;
  const KnockoutPlan* plan_;
  bool alive_;
  bool candidate_;
  bool base_;
  std::int64_t recv_best_ = -1;
  std::int64_t pending_ = -1;
  std::int64_t fwd_max_ = -1;
  std::uint64_t up_slot_ = ~std::uint64_t{0};
  std::int64_t up_sent_ = -1;
};

}  // namespace proto

/// Brute-force check of α-separation and β-domination over an adjacency.
inline Verdict check_ruling(const Adjacency& adj, const std::vector<Index>& members, const std::vector<Index>& target,
                            std::uint32_t alpha, std::uint32_t beta, const std::vector<VertexId>& names = {}) {
  const std::string name = "ruling(" + std::to_string(alpha) + "," + std::to_string(beta) + ")";
  auto label = [&](Index i) { return std::to_string(names.empty() ? i : names[i].value); };
  std::vector<char> is_target(adj.size(), 0);
  for (auto t : target) is_target[t] = 1;
  for (auto m : members)
    if (!is_target[m]) return Verdict::fail(name, "member " + label(m) + " is not in the target set");
  std::vector<char> is_member(adj.size(), 0);
  for (auto m : members) is_member[m] = 1;
  for (auto m : members) {
    auto d = bfs(adj, m);
    for (auto o : members)
      if (o != m && d[o] < alpha)
        return Verdict::fail(name, "separation: members " + label(m) + " and " + label(o) + " at distance " +
                                       std::to_string(d[o]));
  }
  // Multi-source BFS from the members.
  std::vector<std::uint32_t> dist(adj.size(), kUnreachable);
  std::vector<Index> queue;
  for (auto m : members) {
    dist[m] = 0;
    queue.push_back(m);
  }
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (auto y : adj[queue[h]])
      if (dist[y] == kUnreachable) {
        dist[y] = dist[queue[h]] + 1;
        queue.push_back(y);
      }
  std::uint32_t worst = 0;
  for (auto t : target) {
    if (dist[t] > beta)
      return Verdict::fail(name, "domination: target " + label(t) + " at distance " +
                                     (dist[t] == kUnreachable ? std::string("inf") : std::to_string(dist[t])) +
                                     " from the ruling set");
    worst = std::max(worst, dist[t]);
  }
  return Verdict::pass(name, "max domination distance " + std::to_string(worst));
}

inline Verdict check_ruling(const Graph& g, const std::set<VertexId>& rs, const std::set<VertexId>& a,
                            std::uint32_t alpha, std::uint32_t beta) {
  std::vector<Index> m, t;
  for (auto v : rs) m.push_back(g.at(v));
  for (auto v : a) t.push_back(g.at(v));
  return check_ruling(adjacency_of(g), m, t, alpha, beta, {g.vertices().begin(), g.vertices().end()});
}

/// On a cluster graph, members and targets are cluster positions.
inline Verdict check_ruling(const VirtualClusterGraph& vg, const std::set<std::uint32_t>& rs,
                            const std::set<std::uint32_t>& a, std::uint32_t alpha, std::uint32_t beta) {
  return check_ruling(vg.adjacency, {rs.begin(), rs.end()}, {a.begin(), a.end()}, alpha, beta);
}

/// Ruling set for `a` in g, executed in broadcast-CONGEST mode.
inline RulingSet congest_ruling_set(const Graph& g, const std::set<VertexId>& a, RulingParams params,
                                    sim::SimTrace* trace = nullptr, std::uint32_t B = 2) {
  if (a.empty()) throw PreconditionError("ruling set target is empty");
  for (auto v : a) g.at(v);
  auto plan = make_knockout_plan(g.id_range(), params, 0);
  std::vector<proto::NodeState> st(g.vertex_count());
  std::vector<proto::Knockout> progs;
  progs.reserve(g.vertex_count());
  for (Index v = 0; v < g.vertex_count(); ++v) {
    st[v].self = g.id(v);
    st[v].nbr.assign(g.neighbor_ids(v).begin(), g.neighbor_ids(v).end());
    st[v].in_p = true;
    st[v].center = g.id(v);
    st[v].reset_phase();
    progs.emplace_back(st[v], plan, a.count(g.id(v)) > 0, true);
  }
  auto t = sim::run(g, progs, {.B = B, .mode = sim::Mode::broadcast_congest, .schedule_rounds = plan.schedule()});
  if (trace) trace->append(t);
  RulingSet rs;
  rs.rounds = t.rounds_elapsed;
  for (Index v = 0; v < g.vertex_count(); ++v)
    if (progs[v].in_ruling_set()) rs.members.insert(g.id(v));
  return rs;
}

/// q = ⌈log₂ n⌉, c = 2: a (3, 2⌈log₂ n⌉)-ruling set.
inline RulingParams aglp_params(std::size_t n) { return {std::max<std::uint32_t>(1, ceil_log2(n)), 2}; }

inline RulingSet aglp_ruling_set(const Graph& g, const std::set<VertexId>& a, sim::SimTrace* trace = nullptr) {
  return congest_ruling_set(g, a, aglp_params(g.vertex_count()), trace);
}

}  // namespace cspan
