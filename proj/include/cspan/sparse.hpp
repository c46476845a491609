#pragma once

// Sparse spanner: thresholds deg_i = n^(2^i/κ) up to i_0 = ⌊log₂ κρ⌋ and n^ρ
// after, popularity by capped convergecast, (3, 2q)-ruling sets with
// q = ⌈1/ρ⌉, BFS to depth 2q, and interconnection driven by cluster centers.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cspan/engine.hpp"
#include "cspan/phase_report.hpp"
#include "cspan/polylog.hpp"

namespace cspan {

enum class DegreeStage { exponential, fixed };

inline const char* to_string(DegreeStage s) { return s == DegreeStage::exponential ? "exponential" : "fixed"; }

struct DegreeSchedule {
  std::vector<Threshold> deg;  // deg_0..deg_{ℓ−1}
  std::vector<DegreeStage> stage;
};

struct SparseConfig {
  std::uint64_t n = 1;
  std::uint32_t kappa = 2;
  Rational rho;
  std::uint32_t i0 = 0;
  std::uint32_t ell = 1;
  RulingParams ruling;
  std::uint64_t delta = 2;         // BFS depth, 2q
  std::uint64_t delta_ceil = 2;    // ⌈2/ρ⌉, reported alongside
  RadiusSequence radii;
  DegreeSchedule schedule;

  Threshold n_rho() const { return {n, rho}; }
};

inline SparseConfig degree_schedule(std::uint64_t n, std::uint32_t kappa, Rational rho) {
  if (kappa < 2) throw ParameterError("kappa must be at least 2, got " + std::to_string(kappa));
  if (n < 1) throw ParameterError("graph has no vertices");
  if (rho.num <= 0) throw ParameterError("rho must be positive");
  if (rho >= Rational(1, 2)) throw ParameterError("rho must be below 1/2, got " + rho.str());
  if (rho < Rational(1, kappa))
    throw ParameterError("rho must be at least 1/kappa = 1/" + std::to_string(kappa) + ", got " + rho.str());
  SparseConfig c;
  c.n = n;
  c.kappa = kappa;
  c.rho = rho;
  c.i0 = static_cast<std::uint32_t>(floor_log2(Rational::integer(kappa) * rho));
  c.ell = c.i0 + static_cast<std::uint32_t>(ceil(Rational((kappa + 1) * rho.den, kappa * rho.num))) - 1;
  c.ruling = {static_cast<std::uint32_t>(ceil(Rational(rho.den, rho.num))), 2};
  c.delta = 2 * c.ruling.q;
  c.delta_ceil = static_cast<std::uint64_t>(ceil(Rational(2 * rho.den, rho.num)));
  c.radii = radius_sequence(c.delta, c.ell);
  for (std::uint32_t i = 0; i < c.ell; ++i) {
    if (i <= c.i0) {
      c.schedule.deg.push_back({n, Rational(std::int64_t{1} << i, kappa)});
      c.schedule.stage.push_back(DegreeStage::exponential);
    } else {
      c.schedule.deg.push_back({n, rho});
      c.schedule.stage.push_back(DegreeStage::fixed);
    }
  }
  return c;
}

/// κ = ⌈log₂ n⌉ + 1, at least 3 so that ρ = 0.34 is admissible at tiny n.
inline std::uint32_t skeleton_kappa(std::uint64_t n) { return std::max<std::uint32_t>(3, ceil_log2(n) + 1); }

inline const Rational kSkeletonRho{17, 50};

/// 2·(4/ρ+1)^ℓ + 1, exact.
inline BigRational stretch_bound_sparse(Rational rho, std::uint32_t ell) {
  if (rho.num <= 0) throw ParameterError("rho must be positive");
  BigRational base = BigRational(4 * rho.den, rho.num) + 1;
  BigRational p = 1;
  for (std::uint32_t k = 0; k < ell; ++k) p *= base;
  return 2 * p + 1;
}

/// |H| ≤ n^(1+1/κ) + n, exact.
inline bool sparse_size_ok(std::uint64_t h, std::uint64_t n, std::uint32_t kappa) {
  return h <= n || at_most_power(h - n, n, Rational(kappa + 1, kappa));
}

namespace detail {

/// x · n^e ≤ y, exact.
inline bool scaled_at_most(std::uint64_t x, std::uint64_t n, Rational e, std::int64_t y) {
  if (y < 0) return false;
  if (x == 0) return true;
  return compare_ratio_to_power(BigInt(y), BigInt(x), n, e) >= 0;
}

/// Centrally computed Γ(C) as (foreign center) sets, and a check that every
/// non-popular center's list is exactly that set with valid witnesses.
inline Verdict check_knowledge(const Graph& g, const ClusterSet& p, const std::set<std::uint32_t>& popular,
                               const CenterKnowledge& know) {
  auto nb = neighbor_clusters(p, g);
  auto where = p.index_by_vertex(g);
  std::size_t checked = 0;
  for (std::uint32_t k = 0; k < p.size(); ++k) {
    if (popular.count(k)) continue;
    const auto& c = p.clusters[k];
    std::set<VertexId> want;
    for (auto j : nb[k]) want.insert(p.clusters[j].center);
    std::set<VertexId> got;
    auto it = know.find(c.center);
    if (it != know.end())
      for (auto [fc, y] : it->second) {
        got.insert(fc);
        if (!c.contains(y))
          return Verdict::fail("center-knowledge", "witness " + std::to_string(y.value) + " of cluster " +
                                                       std::to_string(c.center.value) + " is not a member");
        bool adjacent = false;
        for (auto w : g.neighbors(g.at(y)))
          adjacent = adjacent || (where[w] && p.clusters[*where[w]].center == fc);
        if (!adjacent)
          return Verdict::fail("center-knowledge", "witness " + std::to_string(y.value) + " has no neighbor in cluster " +
                                                       std::to_string(fc.value));
      }
    if (got != want)
      return Verdict::fail("center-knowledge", "cluster " + std::to_string(c.center.value) + " knows " +
                                                   std::to_string(got.size()) + " of " + std::to_string(want.size()) +
                                                   " neighboring centers");
    ++checked;
  }
  return Verdict::pass("center-knowledge", std::to_string(checked) + " non-popular clusters");
}

inline std::set<std::uint32_t> popular_count_oracle(const Graph& g, const ClusterSet& p, std::uint64_t cap) {
  auto nb = neighbor_clusters(p, g);
  std::set<std::uint32_t> out;
  for (std::uint32_t k = 0; k < p.size(); ++k)
    if (nb[k].size() >= cap) out.insert(k);
  return out;
}

}  // namespace detail

/// The size inequalities of the sparse construction, checked on the phase
/// reports of a completed run.
inline std::vector<Verdict> phase_size_assertions(const SparseConfig& c, const std::vector<PhaseReport>& reps) {
  std::vector<Verdict> out;
  const auto n = c.n;
  auto fail = [&](std::string name, std::uint32_t i, std::string d) {
    out.push_back(Verdict::fail(std::move(name), "phase " + std::to_string(i) + ": " + d));
  };
  auto deg = [&](std::uint32_t i) { return c.schedule.deg.at(i).exponent; };
  bool ok_a = true, ok_b = true, ok_c = true, ok_d = true;
  for (const auto& r : reps) {
    const auto i = r.i;
    if (i < c.ell) {
      std::int64_t rest = static_cast<std::int64_t>(r.p_size) - static_cast<std::int64_t>(r.u_size) -
                          static_cast<std::int64_t>(r.q_size);
      if (!detail::scaled_at_most(r.q_size, n, deg(i), rest)) {
        ok_a = false;
        fail("unclustered-count", i, "|U|+|Q|(deg+1) exceeds |P|");
      }
    }
    if (i >= 1 && i - 1 < reps.size()) {
      const auto& prev = reps[i - 1];
      if (!detail::scaled_at_most(r.p_size, n, deg(i - 1), static_cast<std::int64_t>(prev.p_size))) {
        ok_b = false;
        fail("cluster-decay", i, "|P_i|*deg_(i-1) exceeds |P_(i-1)|");
      }
    }
    if (i <= std::min(c.i0 + 1, c.ell)) {
      Rational e = Rational::integer(1) - Rational((std::int64_t{1} << i) - 1, c.kappa);
      if (!at_most_power(r.p_size, n, e)) {
        ok_c = false;
        fail("exponential-stage", i, std::to_string(r.p_size) + " > n^(" + e.str() + ")");
      }
    }
    if (i >= c.i0 + 1 && i <= c.ell) {
      Rational e = Rational::integer(1) + Rational(1, c.kappa) - Rational::integer(i - c.i0) * c.rho;
      if (!at_most_power(r.p_size, n, e)) {
        ok_d = false;
        fail("fixed-stage", i, std::to_string(r.p_size) + " > n^(" + e.str() + ")");
      }
    }
  }
  if (ok_a) out.push_back(Verdict::pass("unclustered-count"));
  if (ok_b) out.push_back(Verdict::pass("cluster-decay"));
  if (ok_c) out.push_back(Verdict::pass("exponential-stage"));
  if (ok_d) out.push_back(Verdict::pass("fixed-stage"));

  if (reps.size() == c.ell + 1) {
    const auto& last = reps.back();
    out.push_back(at_most_power(last.p_size, n, c.rho)
                      ? Verdict::pass("final-count", std::to_string(last.p_size) + " <= n^" + c.rho.str())
                      : Verdict::fail("final-count", std::to_string(last.p_size) + " > n^" + c.rho.str()));
    // Interconnection events before phase ℓ.
    std::uint64_t events = 0;
    for (const auto& r : reps)
      if (r.i < c.ell) events += r.edges_inter;
    BigReal d0 = real_power(n, deg(0));
    BigReal dl = real_power(n, deg(c.ell - 1));
    BigReal bound = BigReal(reps.front().p_size) * d0 - BigReal(last.p_size) * (dl * dl + dl);
    std::string d = std::to_string(events) + " vs " + bound.str(12);
    out.push_back(BigReal(events) <= bound ? Verdict::pass("interconnect-total", d)
                                          : Verdict::fail("interconnect-total", d));
  }
  return out;
}

inline BuildResult build_spanner_sparse(const Graph& g, std::uint32_t kappa, Rational rho, BuildOptions opt = {}) {
  const auto cfg = degree_schedule(g.vertex_count(), kappa, rho);
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
  for (std::uint32_t i = 0; i <= cfg.ell; ++i) {
    PhaseReport rep;
    rep.i = i;
    rep.p_size = p.size();
    rep.radius_bound = cfg.radii.at(i);
    const auto R = rep.radius_bound;
    const auto before = e.trace().rounds_elapsed;
    rep.checks.push_back(detail::check_trees(p, res.h, R, &rep.radius));
    e.load(p);
    e.center_downcast(R);
    e.exchange(false);
    std::vector<std::uint32_t> leaving;
    ClusterSet next;
    std::uint64_t m_max = 0;
    if (i < cfg.ell) {
      const auto& deg = cfg.schedule.deg[i];
      const auto cap = deg.ceil();
      rep.threshold = deg.approx();
      rep.threshold_count = cap;
      e.popular_upcast(cap, R);
      auto w = e.popular_clusters(p);
      rep.w_size = w.size();
      if (oracles) {
        rep.checks.push_back(detail::same_set("popular-oracle", w, detail::popular_count_oracle(g, p, cap), p));
        rep.checks.push_back(detail::check_knowledge(g, p, w, e.knowledge(p)));
      }
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
      m_max = cap;
    } else {
      // No cap on the lists; the budget relies on |P_ℓ| ≤ n^ρ.
      auto nr = cfg.n_rho();
      rep.threshold = nr.approx();
      rep.threshold_count = nr.ceil();
      bool small = at_most_power(p.size(), n, cfg.rho);
      rep.checks.push_back(small ? Verdict::pass("final-count-precheck")
                                 : Verdict::fail("final-count-precheck",
                                                 std::to_string(p.size()) + " clusters exceed n^" + cfg.rho.str()));
      m_max = small ? nr.ceil() : n;
      e.popular_upcast(n, R, m_max + R);
      if (oracles) rep.checks.push_back(detail::check_knowledge(g, p, {}, e.knowledge(p)));
      for (std::uint32_t k = 0; k < p.size(); ++k) leaving.push_back(k);
    }
    e.interconnect_centerwise(p, {leaving.begin(), leaving.end()}, m_max, R);
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
  for (auto& v : phase_size_assertions(cfg, res.reports)) res.checks.push_back(std::move(v));

  // Each vertex is charged in one phase only, and for fewer edges than that
  // phase's threshold (n^ρ in the last phase).
  std::map<std::pair<VertexId, std::uint32_t>, std::uint64_t> per;
  for (const auto& c : res.h.ledger())
    if (c.kind == EdgeKind::interconnect) ++per[{c.charged, c.phase}];
  Verdict caps = Verdict::pass("interconnect-charges");
  for (auto [key, k] : per) {
    auto lim = key.second < cfg.ell ? cfg.schedule.deg[key.second] : cfg.n_rho();
    if (lim.met_by(k)) {
      caps = Verdict::fail("interconnect-charges", "vertex " + std::to_string(key.first.value) + " charged " +
                                                       std::to_string(k) + " in phase " + std::to_string(key.second));
      break;
    }
  }
  res.checks.push_back(caps);
  Verdict once = Verdict::pass("charge-phases");
  for (const auto& [v, ph] : res.h.charge_phases())
    if (std::set<std::uint32_t>(ph.begin(), ph.end()).size() > 1) {
      once = Verdict::fail("charge-phases", "vertex " + std::to_string(v.value) + " charged in several phases");
      break;
    }
  res.checks.push_back(once);
  res.checks.push_back(sparse_size_ok(res.h.size(), n, kappa)
                           ? Verdict::pass("size", std::to_string(res.h.size()) + " <= n^(1+1/k)+n")
                           : Verdict::fail("size", std::to_string(res.h.size()) + " > n^(1+1/k)+n"));
  return res;
}

inline BuildResult build_spanner_skeleton(const Graph& g, Rational rho = kSkeletonRho, BuildOptions opt = {}) {
  return build_spanner_sparse(g, skeleton_kappa(g.vertex_count()), rho, opt);
}

}  // namespace cspan
