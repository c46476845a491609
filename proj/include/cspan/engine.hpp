#pragma once

// Drives the sub-protocols of a phase over one shared vector of NodeState and
// exposes each step as a standalone operation on a ClusterSet.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "cspan/cluster.hpp"
#include "cspan/exact.hpp"
#include "cspan/node_state.hpp"
#include "cspan/protocols.hpp"
#include "cspan/ruling_set.hpp"
#include "cspan/sim/simulator.hpp"
#include "cspan/spanner_edges.hpp"
#include "cspan/supercluster.hpp"

namespace cspan {

/// A real threshold base^exponent, compared exactly against counts.
struct Threshold {
  std::uint64_t base = 1;
  Rational exponent;

  /// Least integer count that meets the threshold.
  std::uint64_t ceil() const { return ceil_power(base, exponent); }
  bool met_by(std::uint64_t count) const { return at_least_power(count, base, exponent); }
  double approx() const { return static_cast<double>(real_power(base, exponent)); }
};

/// Per cluster center: (foreign center, witness vertex inside own cluster).
using CenterKnowledge = std::map<VertexId, std::vector<std::pair<VertexId, VertexId>>>;

class Engine {
 public:
  explicit Engine(const Graph& g, std::uint32_t B = 2) : g_(&g), B_(B), st_(g.vertex_count()) {
    for (Index v = 0; v < g.vertex_count(); ++v) {
      st_[v].self = g.id(v);
      st_[v].nbr.assign(g.neighbor_ids(v).begin(), g.neighbor_ids(v).end());
      st_[v].reset_phase();
    }
  }

  const Graph& graph() const { return *g_; }
  const std::vector<proto::NodeState>& states() const { return st_; }
  const sim::SimTrace& trace() const { return trace_; }
  /// Runs that executed in broadcast mode (knock-outs on singleton clusters).
  const sim::SimTrace& broadcast_trace() const { return broadcast_trace_; }

  /// Installs P: membership, centers and tree links; clears per-phase state.
  void load(const ClusterSet& p) {
    auto links = sim::tree_links(*g_, p.clusters);
    for (auto& s : st_) {
      s.in_p = false;
      s.center = VertexId();
      s.tree = {};
      s.reset_phase();
    }
    for (const auto& c : p.clusters)
      for (auto v : c.members) {
        auto& s = st_[g_->at(v)];
        s.in_p = true;
        s.center = c.center;
        s.tree = links[g_->at(v)];
      }
  }

  template <class P>
  sim::Round run(std::vector<P>& progs, sim::Round schedule, sim::Mode mode = sim::Mode::congest) {
    auto t = sim::run(*g_, progs, {.B = B_, .mode = mode, .schedule_rounds = schedule});
    trace_.append(t);
    if (mode == sim::Mode::broadcast_congest) broadcast_trace_.append(t);
    return t.rounds_elapsed;
  }

  template <class P, class Make>
  sim::Round run_each(Make make, sim::Round schedule, sim::Mode mode = sim::Mode::congest) {
    std::vector<P> progs;
    progs.reserve(st_.size());
    for (auto& s : st_) progs.push_back(make(s));
    return run(progs, schedule, mode);
  }

  sim::Round center_downcast(std::uint64_t R) {
    return run_each<proto::CenterDowncast>([](auto& s) { return proto::CenterDowncast(s); }, R);
  }

  sim::Round exchange(bool with_popular) {
    return run_each<proto::Exchange>([&](auto& s) { return proto::Exchange(s, with_popular); }, 1,
                                     sim::Mode::broadcast_congest);
  }

  sim::Round popular_local(std::uint64_t threshold, std::uint64_t R) {
    return run_each<proto::PopularOrUp>([&](auto& s) { return proto::PopularOrUp(s, threshold); }, R);
  }

  /// Schedule cap + R unless a tighter budget is known.
  sim::Round popular_upcast(std::uint64_t cap, std::uint64_t R, std::optional<sim::Round> budget = std::nullopt) {
    return run_each<proto::PopularUpcast>([&](auto& s) { return proto::PopularUpcast(s, cap); },
                                          budget.value_or(cap + R));
  }

  sim::Round popular_downcast(std::uint64_t R) {
    return run_each<proto::PopularDowncast>([](auto& s) { return proto::PopularDowncast(s); }, R);
  }

  /// Positions in p of popular clusters, as known to their centers.
  std::set<std::uint32_t> popular_clusters(const ClusterSet& p) const {
    std::set<std::uint32_t> out;
    for (std::uint32_t k = 0; k < p.size(); ++k)
      if (st_[g_->at(p.clusters[k].center)].popular) out.insert(k);
    return out;
  }

  CenterKnowledge knowledge(const ClusterSet& p) const {
    CenterKnowledge out;
    for (const auto& c : p.clusters) out[c.center] = st_[g_->at(c.center)].knowledge;
    return out;
  }

  /// Knock-out ruling set over the cluster graph of p for the clusters in a.
  /// Runs in broadcast mode when every cluster is a singleton.
  std::pair<std::set<std::uint32_t>, sim::Round> ruling(const ClusterSet& p, const std::set<std::uint32_t>& a,
                                                       RulingParams params, std::uint64_t R) {
    bool singletons = true;
    for (const auto& c : p.clusters) singletons = singletons && c.members.size() == 1;
    auto plan = make_knockout_plan(g_->id_range(), params, R);
    std::vector<char> cand(g_->vertex_count(), 0);
    for (auto k : a) cand[g_->at(p.clusters[k].center)] = 1;
    std::vector<proto::Knockout> progs;
    progs.reserve(st_.size());
    for (Index v = 0; v < st_.size(); ++v) progs.emplace_back(st_[v], plan, cand[v] != 0, false);
    auto rounds = run(progs, plan.schedule(), singletons ? sim::Mode::broadcast_congest : sim::Mode::congest);
    std::set<std::uint32_t> out;
    for (std::uint32_t k = 0; k < p.size(); ++k) {
      Index c = g_->at(p.clusters[k].center);
      st_[c].ruling = progs[c].in_ruling_set();
      if (st_[c].ruling) out.insert(k);
    }
    return {out, rounds};
  }

  /// Message-passing BFS superclustering from the clusters in q. Rebuilds
  /// membership from the resulting trees.
  std::pair<SuperclusterResult, sim::Round> supercluster(const ClusterSet& p, const std::set<std::uint32_t>& q,
                                                         std::uint64_t delta, std::uint64_t R, std::uint32_t phase) {
    BfsSchedule sched{R, delta};
    std::vector<char> is_q(g_->vertex_count(), 0);
    for (auto k : q) is_q[g_->at(p.clusters[k].center)] = 1;
    std::vector<proto::BfsSupercluster> progs;
    progs.reserve(st_.size());
    for (Index v = 0; v < st_.size(); ++v) progs.emplace_back(st_[v], sched, is_q[v] != 0);
    auto rounds = run(progs, sched.total());

    SuperclusterResult res;
    res.level.assign(p.size(), std::nullopt);
    res.pred.assign(p.size(), std::nullopt);
    std::map<VertexId, Cluster> built;
    for (std::uint32_t k = 0; k < p.size(); ++k) {
      const auto& old = p.clusters[k];
      const auto& cs = st_[g_->at(old.center)];
      if (!cs.joined_level) {
        res.unclustered.push_back(k);
        continue;
      }
      res.level[k] = cs.joined_level;
      auto& nc = built[cs.root];
      nc.center = cs.root;
      for (auto v : old.members) {
        const auto& s = st_[g_->at(v)];
        if (!s.joined_level || s.root != cs.root) throw ModelError("cluster split during superclustering");
        nc.members.push_back(v);
        if (s.tree.parent) nc.parent[v] = s.nbr[*s.tree.parent];
        for (const auto& a : s.added) res.edges.push_back({a.edge, a.charged, a.kind, phase});
      }
    }
    for (auto& [r, c] : built) {
      std::sort(c.members.begin(), c.members.end());
      res.next.clusters.push_back(std::move(c));
    }
    res.next.phase = phase + 1;
    std::sort(res.edges.begin(), res.edges.end(), [](const Charge& a, const Charge& b) { return a.edge < b.edge; });
    for (auto& c : st_) c.added.clear();
    // Predecessor clusters, for reporting: the P_i cluster holding the far endpoint.
    auto where = p.index_by_vertex(*g_);
    std::map<VertexId, std::uint32_t> by_center;
    for (std::uint32_t k = 0; k < p.size(); ++k) by_center[p.clusters[k].center] = k;
    for (const auto& e : res.edges) {
      auto k = by_center.at(e.charged);
      auto a = where[g_->at(e.edge.u)];
      res.pred[k] = *a == k ? where[g_->at(e.edge.v)] : a;
    }
    return {res, rounds};
  }

  /// One round; members of the leaving clusters add edges.
  sim::Round interconnect_vertexwise(const ClusterSet& p, const std::set<std::uint32_t>& leaving) {
    auto flags = leaving_flags(p, leaving);
    std::vector<proto::InterconnectVertexwise> progs;
    progs.reserve(st_.size());
    for (Index v = 0; v < st_.size(); ++v) progs.emplace_back(st_[v], flags[v] != 0);
    return run(progs, 1);
  }

  /// Schedule m_max + R + 1 where m_max bounds every leaving center's list.
  sim::Round interconnect_centerwise(const ClusterSet& p, const std::set<std::uint32_t>& leaving,
                                     std::uint64_t m_max, std::uint64_t R) {
    auto flags = leaving_flags(p, leaving);
    std::vector<proto::InterconnectCenterwise> progs;
    progs.reserve(st_.size());
    for (Index v = 0; v < st_.size(); ++v) progs.emplace_back(st_[v], flags[v] != 0);
    return run(progs, m_max + R + 1);
  }

  /// Collects and clears edges added by vertices since the last call.
  std::vector<Charge> take_additions(std::uint32_t phase) {
    std::vector<Charge> out;
    for (auto& s : st_) {
      for (const auto& a : s.added) out.push_back({a.edge, a.charged, a.kind, phase});
      s.added.clear();
    }
    return out;
  }

  std::vector<proto::NodeState>& mutable_states() { return st_; }

 private:
  std::vector<char> leaving_flags(const ClusterSet& p, const std::set<std::uint32_t>& leaving) const {
    std::vector<char> f(g_->vertex_count(), 0);
    for (auto k : leaving)
      for (auto v : p.clusters[k].members) f[g_->at(v)] = 1;
    return f;
  }

  const Graph* g_;
  std::uint32_t B_;
  std::vector<proto::NodeState> st_;
  sim::SimTrace trace_;
  sim::SimTrace broadcast_trace_;
};

// ---------------------------------------------------------------------------
// Standalone operations. Each loads p into a fresh engine, runs what it needs
// (including the neighbor exchanges), and reports the rounds it used.

struct PopularResult {
  std::set<std::uint32_t> popular;  // positions in p
  /// Per vertex: the center of the cluster behind each port, if any.
  std::map<VertexId, std::vector<std::optional<VertexId>>> neighbor_clusters;
  CenterKnowledge knowledge;
  sim::Round rounds = 0;
  sim::SimTrace trace;
};

inline std::uint64_t max_depth(const ClusterSet& p) {
  std::uint64_t d = 0;
  for (const auto& c : p.clusters) {
    auto cd = c.depth();
    if (!cd) throw PreconditionError("cluster tree of " + std::to_string(c.center.value) + " is malformed");
    d = std::max(d, *cd);
  }
  return d;
}

/// Local popularity: a vertex is popular when it sees at least tau distinct
/// foreign clusters; a cluster is popular when some member is.
inline PopularResult detect_popular_local(const Graph& g, const ClusterSet& p, Threshold tau) {
  Engine e(g);
  e.load(p);
  auto R = max_depth(p);
  PopularResult r;
  r.rounds += e.center_downcast(R);
  r.rounds += e.exchange(false);
  r.rounds += e.popular_local(tau.ceil(), R);
  r.popular = e.popular_clusters(p);
  for (const auto& s : e.states()) r.neighbor_clusters[s.self] = s.nbr_center;
  r.trace = e.trace();
  return r;
}

/// Popular Clusters Detection with cap ⌈deg⌉. Popular iff the center learned
/// at least deg foreign centers.
inline PopularResult detect_popular_convergecast(const Graph& g, const ClusterSet& p, Threshold deg) {
  Engine e(g);
  e.load(p);
  auto R = max_depth(p);
  PopularResult r;
  r.rounds += e.center_downcast(R);
  r.rounds += e.exchange(false);
  r.rounds += e.popular_upcast(deg.ceil(), R);
  r.popular = e.popular_clusters(p);
  r.knowledge = e.knowledge(p);
  for (const auto& s : e.states()) r.neighbor_clusters[s.self] = s.nbr_center;
  r.trace = e.trace();
  return r;
}

inline std::set<std::uint32_t> complement(std::size_t m, const std::set<std::uint32_t>& s) {
  std::set<std::uint32_t> out;
  for (std::uint32_t k = 0; k < m; ++k)
    if (!s.count(k)) out.insert(k);
  return out;
}

/// Members of the clusters in u_i add one edge per neighboring cluster.
inline std::size_t interconnect_vertexwise(const Graph& g, const ClusterSet& p, const std::set<std::uint32_t>& u_i,
                                           SpannerEdgeSet& h, std::uint32_t phase = 0, sim::Round* rounds = nullptr) {
  Engine e(g);
  e.load(p);
  e.exchange(false);
  auto r = e.interconnect_vertexwise(p, u_i);
  if (rounds) *rounds = r;
  std::size_t added = 0;
  for (const auto& c : e.take_additions(phase)) added += h.add(c) ? 1 : 0;
  return added;
}

/// Centers of the clusters in u_i have their witnesses add one edge per
/// known neighboring center.
inline std::size_t interconnect_centerwise(const Graph& g, const ClusterSet& p, const std::set<std::uint32_t>& u_i,
                                           const CenterKnowledge& knowledge, SpannerEdgeSet& h,
                                           std::uint32_t phase = 0, sim::Round* rounds = nullptr) {
  Engine e(g);
  e.load(p);
  e.exchange(false);
  std::uint64_t m_max = 0;
  for (auto k : u_i) {
    auto it = knowledge.find(p.clusters[k].center);
    if (it == knowledge.end()) continue;
    e.mutable_states()[g.at(p.clusters[k].center)].knowledge = it->second;
    m_max = std::max<std::uint64_t>(m_max, it->second.size());
  }
  auto r = e.interconnect_centerwise(p, u_i, m_max, max_depth(p));
  if (rounds) *rounds = r;
  std::size_t added = 0;
  for (const auto& c : e.take_additions(phase)) added += h.add(c) ? 1 : 0;
  return added;
}

/// Ruling set for the clusters in a, on the cluster graph whose superedges are
/// those incident to a. Cluster IDs are center IDs.
inline RulingSet supergraph_ruling_set(const Graph& g, const SpannerEdgeSet& h, const ClusterSet& p,
                                       const std::set<std::uint32_t>& a, RulingParams params, std::uint64_t r_bound,
                                       std::set<std::uint32_t>* positions = nullptr) {
  for (const auto& c : p.clusters) {
    auto v = verify_cluster_tree(c, h, r_bound);
    if (!v.ok) throw PreconditionError(v.name + ": " + v.detail);
  }
  if (a.empty()) throw PreconditionError("ruling set target is empty");
  Engine e(g);
  e.load(p);
  e.exchange(false);
  for (auto k : a) e.mutable_states()[g.at(p.clusters[k].center)].popular = true;
  e.popular_downcast(r_bound);
  e.exchange(true);
  auto [pos, rounds] = e.ruling(p, a, params, r_bound);
  RulingSet rs;
  rs.rounds = rounds;
  for (auto k : pos) rs.members.insert(p.clusters[k].center);
  if (positions) *positions = pos;
  return rs;
}

/// Message-passing BFS superclustering from q to depth delta. The ruling
/// clusters must be 3-separated in vg.
inline SuperclusterResult bfs_supercluster(const Graph& g, const ClusterSet& p, const VirtualClusterGraph& vg,
                                           const std::set<std::uint32_t>& popular, const std::set<std::uint32_t>& q,
                                           std::uint64_t delta, SpannerEdgeSet& h, std::uint32_t phase = 0,
                                           sim::Round* rounds = nullptr) {
  for (auto x : q) {
    auto d = bfs(vg.adjacency, x);
    for (auto y : q)
      if (y != x && d[y] < 3)
        throw PreconditionError("ruling clusters " + std::to_string(p.clusters[x].center.value) + " and " +
                                std::to_string(p.clusters[y].center.value) + " are not 3-separated");
  }
  Engine e(g);
  e.load(p);
  auto R = max_depth(p);
  e.exchange(false);
  for (auto k : popular) e.mutable_states()[g.at(p.clusters[k].center)].popular = true;
  e.popular_downcast(R);
  e.exchange(true);
  auto [res, r] = e.supercluster(p, q, delta, R, phase);
  if (rounds) *rounds = r;
  for (const auto& c : res.edges) h.add(c);
  return res;
}

}  // namespace cspan
