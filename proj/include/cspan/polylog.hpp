#pragma once

// Spanner with κ−1 superclustering phases: local popularity against n^(1/κ),
// (3, 2⌈log₂ n⌉)-ruling sets on the popular cluster graph, BFS to depth
// δ = 2⌈log₂ n⌉, and vertex-wise interconnection.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cspan/engine.hpp"
#include "cspan/phase_report.hpp"

namespace cspan {

struct PolylogConfig {
  std::uint64_t n = 1;
  std::uint32_t kappa = 2;
  std::uint32_t ell = 1;
  std::uint64_t delta = 2;
  RulingParams ruling;
  Threshold tau;
  RadiusSequence radii;
};

inline PolylogConfig polylog_config(std::uint64_t n, std::uint32_t kappa) {
  if (kappa < 2) throw ParameterError("kappa must be at least 2, got " + std::to_string(kappa));
  if (n < 1) throw ParameterError("graph has no vertices");
  PolylogConfig c;
  c.n = n;
  c.kappa = kappa;
  c.ell = kappa - 1;
  auto lg = std::max<std::uint32_t>(1, ceil_log2(n));
  c.delta = 2 * lg;
  c.ruling = {lg, 2};
  c.tau = {n, Rational(1, kappa)};
  c.radii = radius_sequence(c.delta, c.ell);
  return c;
}

/// (4⌈log₂ n⌉+1)^(κ−1) + 1, or 1 when κ = 1.
inline BigInt stretch_bound_polylog(std::uint64_t n, std::uint32_t kappa) {
  if (n < 2) throw ParameterError("stretch bound needs n >= 2");
  if (kappa < 1) throw ParameterError("kappa must be positive");
  if (kappa == 1) return 1;
  return big_pow(BigInt(4 * ceil_log2(n) + 1), kappa - 1) + 1;
}

/// n^(1+1/κ) compared exactly.
inline bool polylog_size_ok(std::uint64_t h, std::uint64_t n, std::uint32_t kappa) {
  return at_most_power(h, n, Rational(kappa + 1, kappa));
}

namespace detail {

/// Positions of clusters holding a vertex that sees at least `threshold`
/// distinct foreign clusters, computed centrally.
inline std::set<std::uint32_t> popular_local_oracle(const Graph& g, const ClusterSet& p, std::uint64_t threshold) {
  auto where = p.index_by_vertex(g);
  std::set<std::uint32_t> out;
  for (Index v = 0; v < g.vertex_count(); ++v) {
    if (!where[v]) continue;
    std::set<std::uint32_t> seen;
    for (auto w : g.neighbors(v))
      if (where[w] && *where[w] != *where[v]) seen.insert(*where[w]);
    if (seen.size() >= threshold) out.insert(*where[v]);
  }
  return out;
}

inline Verdict same_set(const std::string& name, const std::set<std::uint32_t>& got,
                        const std::set<std::uint32_t>& want, const ClusterSet& p) {
  if (got == want) return Verdict::pass(name, std::to_string(got.size()) + " clusters");
  for (auto k : want)
    if (!got.count(k)) return Verdict::fail(name, "missed cluster " + std::to_string(p.clusters[k].center.value));
  for (auto k : got)
    if (!want.count(k)) return Verdict::fail(name, "extra cluster " + std::to_string(p.clusters[k].center.value));
  return Verdict::fail(name, "sets differ");
}

inline void record_run_checks(const Graph& g, BuildResult& res) {
  res.checks.push_back(check_partition(g, res.removed));
  res.checks.push_back(check_supercluster_charges(res.h));
  const auto& t = res.trace;
  res.checks.push_back(t.messages_per_edge_per_round_max <= 1 && t.max_ids_per_message <= 2
                           ? Verdict::pass("congestion", "ids " + std::to_string(t.max_ids_per_message) +
                                                             ", per edge " +
                                                             std::to_string(t.messages_per_edge_per_round_max))
                           : Verdict::fail("congestion", "ids " + std::to_string(t.max_ids_per_message) +
                                                             ", per edge " +
                                                             std::to_string(t.messages_per_edge_per_round_max)));
  res.checks.push_back(res.broadcast_trace.broadcast_compliant
                           ? Verdict::pass("broadcast", std::to_string(res.broadcast_trace.runs) + " runs")
                           : Verdict::fail("broadcast", "a knock-out run sent different messages on different ports"));
}

}  // namespace detail

inline BuildResult build_spanner_polylog(const Graph& g, std::uint32_t kappa, BuildOptions opt = {}) {
  const auto cfg = polylog_config(g.vertex_count(), kappa);
  const std::uint64_t n = cfg.n;
  const bool oracles = n <= opt.oracle_max_n;
  BuildResult res;
  res.stretch_radius = cfg.radii.at(cfg.ell);
  auto p = singleton_partition(g);
  if (n == 1) {
    res.removed.push_back(p);
    detail::record_run_checks(g, res);
    return res;
  }

  Engine e(g, opt.B);
  const auto tau_count = cfg.tau.ceil();
  for (std::uint32_t i = 0; i <= cfg.ell; ++i) {
    PhaseReport rep;
    rep.i = i;
    rep.p_size = p.size();
    rep.radius_bound = cfg.radii.at(i);
    rep.threshold = cfg.tau.approx();
    rep.threshold_count = tau_count;
    const auto R = rep.radius_bound;
    const auto before = e.trace().rounds_elapsed;
    rep.checks.push_back(detail::check_trees(p, res.h, R, &rep.radius));
    rep.checks.push_back(at_most_power(p.size(), n, Rational(kappa - i, kappa))
                             ? Verdict::pass("cluster-count")
                             : Verdict::fail("cluster-count", std::to_string(p.size()) + " clusters exceed n^((k-i)/k)"));
    e.load(p);
    std::vector<std::uint32_t> leaving;
    ClusterSet next;
    if (i < cfg.ell) {
      e.center_downcast(R);
      e.exchange(false);
      e.popular_local(tau_count, R);
      auto w = e.popular_clusters(p);
      rep.w_size = w.size();
      if (oracles)
        rep.checks.push_back(detail::same_set("popular-oracle", w, detail::popular_local_oracle(g, p, tau_count), p));
      e.popular_downcast(R);
      e.exchange(true);
      auto [q, ruling_rounds] = e.ruling(p, w, cfg.ruling, R);
      rep.q_size = q.size();
      auto vg = build_cluster_graph(p, w, g);
      rep.checks.push_back(check_ruling(vg, q, w, 3, 2 * cfg.ruling.q));
      auto [sc, bfs_rounds] = e.supercluster(p, q, cfg.delta, R, i);
      if (oracles) rep.checks.push_back(detail::compare_bfs(sc, reference_bfs_supercluster(p, vg, q, cfg.delta, i)));
      rep.checks.push_back(detail::check_disjoint_popular(w, sc.unclustered, p));
      for (const auto& c : sc.edges) res.h.add(c);
      rep.edges_super = sc.edges.size();
      leaving = sc.unclustered;
      next = std::move(sc.next);
    } else {
      e.exchange(false);
      for (std::uint32_t k = 0; k < p.size(); ++k) leaving.push_back(k);
    }
    e.interconnect_vertexwise(p, {leaving.begin(), leaving.end()});
    for (const auto& c : e.take_additions(i)) {
      res.h.add(c);
      ++rep.edges_inter;
    }
    res.removed.push_back(detail::subset(p, leaving));
    rep.u_size = leaving.size();
    rep.h_size = res.h.size();
    rep.rounds = e.trace().rounds_elapsed - before;
    res.reports.push_back(std::move(rep));
    p = std::move(next);
  }

  res.trace = e.trace();
  res.broadcast_trace = e.broadcast_trace();
  detail::record_run_checks(g, res);
  std::uint64_t worst = 0;
  VertexId who;
  for (auto [v, k] : res.h.charges_per_vertex(EdgeKind::interconnect))
    if (k > worst) worst = k, who = v;
  res.checks.push_back(!cfg.tau.met_by(worst)
                           ? Verdict::pass("interconnect-charges", "max " + std::to_string(worst) + " < n^(1/k)")
                           : Verdict::fail("interconnect-charges", "vertex " + std::to_string(who.value) + " charged " +
                                                                       std::to_string(worst) + " >= n^(1/k)"));
  res.checks.push_back(polylog_size_ok(res.h.size(), n, kappa)
                           ? Verdict::pass("size", std::to_string(res.h.size()) + " <= n^(1+1/k)")
                           : Verdict::fail("size", std::to_string(res.h.size()) + " > n^(1+1/k)"));
  return res;
}

}  // namespace cspan
