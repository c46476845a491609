#pragma once

// JSON run reports: graph metadata, configuration, phase records, trace
// summary, verdicts, and computed bounds with their formulas.

#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cspan/generators.hpp"
#include "cspan/phase_report.hpp"
#include "cspan/polylog.hpp"
#include "cspan/sparse.hpp"
#include "cspan/verify.hpp"

namespace cspan {

inline constexpr const char* kReportSchema = "cspan-report/1";

struct BoundEntry {
  std::string name;
  std::string value;  // exact where possible
  std::string formula;

  bool operator==(const BoundEntry&) const = default;
};

struct TraceSummary {
  std::uint64_t rounds_elapsed = 0;
  std::uint64_t max_ids_per_message = 0;
  std::uint64_t messages_per_edge_per_round_max = 0;
  std::uint64_t total_messages = 0;
  bool broadcast_compliant = true;
  std::uint64_t runs = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> per_round_message_counts;  // (round, messages), active rounds

  bool operator==(const TraceSummary&) const = default;
};

inline TraceSummary summarize(const sim::SimTrace& t) {
  return {t.rounds_elapsed, t.max_ids_per_message, t.messages_per_edge_per_round_max, t.total_messages,
          t.broadcast_compliant, t.runs, t.per_round_message_counts};
}

struct StretchSummary {
  std::uint64_t per_edge = 0;
  std::optional<std::string> worst_edge;
  std::optional<std::string> disconnected_edge;
  std::optional<std::string> all_pairs;

  bool operator==(const StretchSummary&) const = default;
};

inline StretchSummary summarize(const StretchReport& r) {
  StretchSummary s;
  s.per_edge = r.per_edge;
  if (r.worst_edge) s.worst_edge = edge_str(*r.worst_edge);
  if (r.disconnected) s.disconnected_edge = edge_str(*r.disconnected);
  if (r.all_pairs) s.all_pairs = r.all_pairs->str();
  return s;
}

struct Report {
  std::string schema = kReportSchema;
  std::string graph_source;
  GraphMetadata graph;
  nlohmann::json config = nlohmann::json::object();
  std::vector<PhaseReport> phases;
  TraceSummary trace;
  std::optional<StretchSummary> stretch;
  std::vector<Verdict> verdicts;
  std::vector<BoundEntry> bounds;
  std::uint64_t spanner_edges = 0;

  bool ok() const { return all_ok(verdicts); }
  bool operator==(const Report&) const = default;
};

// --- JSON mapping -----------------------------------------------------------

inline void to_json(nlohmann::json& j, const Verdict& v) { j = {{"name", v.name}, {"ok", v.ok}, {"detail", v.detail}}; }
inline void from_json(const nlohmann::json& j, Verdict& v) {
  j.at("name").get_to(v.name);
  j.at("ok").get_to(v.ok);
  j.at("detail").get_to(v.detail);
}

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BoundEntry, name, value, formula)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(TraceSummary, rounds_elapsed, max_ids_per_message, messages_per_edge_per_round_max,
                                   total_messages, broadcast_compliant, runs, per_round_message_counts)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GraphMetadata, kind, n, rows, cols, p, seed, edges, augmented_edges)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PhaseReport, i, p_size, w_size, q_size, u_size, radius_bound, radius, threshold,
                                   threshold_count, edges_super, edges_inter, h_size, rounds, checks)

namespace detail {

template <class T>
void put_opt(nlohmann::json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
void get_opt(const nlohmann::json& j, const char* key, std::optional<T>& v) {
  if (!j.contains(key) || j.at(key).is_null()) v.reset();
  else v = j.at(key).get<T>();
}

}  // namespace detail

inline void to_json(nlohmann::json& j, const StretchSummary& s) {
  j = {{"per_edge", s.per_edge}};
  detail::put_opt(j, "worst_edge", s.worst_edge);
  detail::put_opt(j, "disconnected_edge", s.disconnected_edge);
  detail::put_opt(j, "all_pairs", s.all_pairs);
}
inline void from_json(const nlohmann::json& j, StretchSummary& s) {
  j.at("per_edge").get_to(s.per_edge);
  detail::get_opt(j, "worst_edge", s.worst_edge);
  detail::get_opt(j, "disconnected_edge", s.disconnected_edge);
  detail::get_opt(j, "all_pairs", s.all_pairs);
}

inline void to_json(nlohmann::json& j, const Report& r) {
  j = {{"schema", r.schema},   {"graph_source", r.graph_source}, {"graph", r.graph},
       {"config", r.config},   {"phases", r.phases},             {"trace", r.trace},
       {"verdicts", r.verdicts}, {"bounds", r.bounds},           {"spanner_edges", r.spanner_edges},
       {"ok", r.ok()}};
  detail::put_opt(j, "stretch", r.stretch);
}
inline void from_json(const nlohmann::json& j, Report& r) {
  j.at("schema").get_to(r.schema);
  if (r.schema != kReportSchema) throw ParseError("unsupported report schema '" + r.schema + "'");
  j.at("graph_source").get_to(r.graph_source);
  j.at("graph").get_to(r.graph);
  r.config = j.at("config");
  j.at("phases").get_to(r.phases);
  j.at("trace").get_to(r.trace);
  j.at("verdicts").get_to(r.verdicts);
  j.at("bounds").get_to(r.bounds);
  j.at("spanner_edges").get_to(r.spanner_edges);
  detail::get_opt(j, "stretch", r.stretch);
}

inline std::string dump(const Report& r, int indent = 2) { return nlohmann::json(r).dump(indent); }

inline Report parse_report(const std::string& text) {
  try {
    return nlohmann::json::parse(text).get<Report>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

inline void write_report(const std::string& path, const Report& r) {
  std::ofstream out(path);
  if (!out) throw ModelError("cannot write " + path);
  out << dump(r) << "\n";
}

// --- Assembling reports -----------------------------------------------------

inline std::string real_str(const BigReal& x) { return x.str(12); }

inline std::string rational_str(const BigRational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return x.str();
}

inline GraphMetadata metadata_of(const Graph& g) {
  GraphMetadata m;
  m.kind = "file";
  m.n = static_cast<std::uint32_t>(g.vertex_count());
  m.edges = g.edge_count();
  return m;
}

inline Report make_report_polylog(const std::string& source, const GraphMetadata& meta, const Graph& g,
                                  std::uint32_t kappa, const BuildResult& b, const StretchReport& s,
                                  std::uint32_t B = 2) {
  auto cfg = polylog_config(g.vertex_count(), kappa);
  Report r;
  r.graph_source = source;
  r.graph = meta;
  r.config = {{"algorithm", "polylog"}, {"kappa", kappa},          {"ell", cfg.ell},
              {"delta", cfg.delta},     {"ruling_q", cfg.ruling.q}, {"ruling_c", cfg.ruling.c},
              {"log_n", "ceil(log2 n)"}, {"B", B},
              {"B_note", "message capacity in vertex IDs is a modeling choice"}};
  r.phases = b.reports;
  r.trace = summarize(b.trace);
  r.stretch = summarize(s);
  r.spanner_edges = b.h.size();
  const auto n = g.vertex_count();
  BigInt per_edge = 2 * BigInt(b.stretch_radius) + 1;
  r.verdicts = b.all_checks();
  r.verdicts.push_back(stretch_verdict(s, per_edge));
  r.bounds.push_back({"stretch_per_edge", per_edge.str(), "2*R_l+1; R_0=0, R_(i+1)=(2d+1)*R_i+d, d=2*ceil(log2 n), l=k-1"});
  if (n >= 2)
    r.bounds.push_back({"stretch_closed_form", stretch_bound_polylog(n, kappa).str(), "(4*ceil(log2 n)+1)^(k-1)+1"});
  r.bounds.push_back({"size", real_str(real_power(n, Rational(kappa + 1, kappa))), "n^(1+1/k)"});
  if (n >= 2)
    r.bounds.push_back({"round_scale", big_pow(BigInt(4 * ceil_log2(n) + 1), kappa - 1).str(), "(4*ceil(log2 n)+1)^(k-1)"});
  return r;
}

inline BigReal round_scale_sparse(std::uint64_t n, Rational rho, std::uint32_t ell) {
  BigReal base = BigReal(4 * rho.den) / BigReal(rho.num) + 1;
  return real_power(n, rho) * boost::multiprecision::pow(base, ell + 1);
}

inline Report make_report_sparse(const std::string& source, const GraphMetadata& meta, const Graph& g,
                                 std::uint32_t kappa, Rational rho, const BuildResult& b, const StretchReport& s,
                                 const std::string& algorithm = "sparse", std::uint32_t B = 2) {
  auto cfg = degree_schedule(g.vertex_count(), kappa, rho);
  Report r;
  r.graph_source = source;
  r.graph = meta;
  nlohmann::json degs = nlohmann::json::array();
  for (std::size_t i = 0; i < cfg.schedule.deg.size(); ++i)
    degs.push_back({{"i", i},
                    {"exponent", cfg.schedule.deg[i].exponent.str()},
                    {"value", cfg.schedule.deg[i].approx()},
                    {"stage", to_string(cfg.schedule.stage[i])}});
  r.config = {{"algorithm", algorithm},
              {"kappa", kappa},
              {"rho", rho.str()},
              {"i0", cfg.i0},
              {"ell", cfg.ell},
              {"delta", cfg.delta},
              {"delta_ceil_2_over_rho", cfg.delta_ceil},
              {"ruling_q", cfg.ruling.q},
              {"ruling_c", cfg.ruling.c},
              {"degree_schedule", degs},
              {"B", B},
              {"B_note", "message capacity in vertex IDs is a modeling choice"}};
  r.phases = b.reports;
  r.trace = summarize(b.trace);
  r.stretch = summarize(s);
  r.spanner_edges = b.h.size();
  const auto n = g.vertex_count();
  BigInt per_edge = 4 * BigInt(b.stretch_radius) + 1;
  r.verdicts = b.all_checks();
  r.verdicts.push_back(stretch_verdict(s, per_edge));
  r.bounds.push_back({"stretch_per_edge", per_edge.str(), "4*R_l+1; R_0=0, R_(i+1)=(2d+1)*R_i+d, d=2*ceil(1/rho)"});
  BigInt strict = 4 * BigInt(radius_sequence(cfg.delta_ceil, cfg.ell).at(cfg.ell)) + 1;
  r.bounds.push_back({"stretch_per_edge_ceil_delta", strict.str(), "4*R_l+1 with d=ceil(2/rho)"});
  r.bounds.push_back({"stretch_closed_form", rational_str(stretch_bound_sparse(rho, cfg.ell + 1)), "2*(4/rho+1)^(l+1)+1"});
  r.bounds.push_back({"size", real_str(real_power(n, Rational(kappa + 1, kappa)) + n), "n^(1+1/k)+n"});
  r.bounds.push_back({"final_count", real_str(real_power(n, rho)), "|P_l| <= n^rho"});
  r.bounds.push_back({"round_scale", real_str(round_scale_sparse(n, rho, cfg.ell)), "n^rho*(4/rho+1)^(l+1)"});
  return r;
}

}  // namespace cspan
