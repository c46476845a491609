#pragma once

// Commands behind the cspan tool: build, verify, bench.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cspan/report.hpp"

namespace cspan::cli {

/// An error tagged with the module it came from.
class ModuleError : public std::runtime_error {
 public:
  ModuleError(std::string module, const std::string& what, int code = 2)
      : std::runtime_error(what), module_(std::move(module)), code_(code) {}
  const std::string& module() const { return module_; }
  int code() const { return code_; }

 private:
  std::string module_;
  int code_;
};

/// Runs f, re-throwing failures as ModuleError. Simulator failures are
/// attributed to the simulator whatever stage raised them.
template <class F>
auto stage(const std::string& module, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ModuleError&) {
    throw;
  } catch (const CongestionError& e) {
    throw ModuleError("congest_sim", std::string("congestion violation: ") + e.what());
  } catch (const RoundBudgetError& e) {
    throw ModuleError("congest_sim", std::string("round budget exceeded: ") + e.what());
  } catch (const ParameterError& e) {
    throw ModuleError(module, std::string("parameter error: ") + e.what());
  } catch (const ParseError& e) {
    throw ModuleError(module, std::string("parse error: ") + e.what());
  } catch (const PreconditionError& e) {
    throw ModuleError(module, std::string("precondition violated: ") + e.what());
  } catch (const std::exception& e) {
    throw ModuleError(module, e.what());
  }
}

enum class Algorithm { polylog, sparse, skeleton };

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "polylog") return Algorithm::polylog;
  if (s == "sparse") return Algorithm::sparse;
  if (s == "skeleton" || s == "skeleton-preset") return Algorithm::skeleton;
  throw ParameterError("unknown algorithm '" + s + "' (polylog, sparse, skeleton)");
}

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::polylog: return "polylog";
    case Algorithm::sparse: return "sparse";
    case Algorithm::skeleton: return "skeleton";
  }
  return "?";
}

struct RunSpec {
  Algorithm algorithm = Algorithm::polylog;
  std::string graph;  // file path, or "gen:<kind>:<k=v,...>"
  std::string kappa;  // integer, "log" for ⌈log₂ n⌉, "log+1"; empty for the preset default
  std::optional<std::string> rho;
  std::uint64_t seed = 1;
  std::optional<std::string> out;  // directory
};

struct LoadedGraph {
  Graph graph;
  GraphMetadata meta;
};

inline LoadedGraph load_source(const std::string& source, std::uint64_t seed) {
  return stage("graph_core", [&] {
    if (source.rfind("gen:", 0) == 0) {
      auto gg = generate_from_spec(source.substr(4), seed);
      return LoadedGraph{std::move(gg.graph), gg.metadata};
    }
    auto g = load_graph(source);
    auto m = metadata_of(g);
    return LoadedGraph{std::move(g), m};
  });
}

inline std::uint32_t resolve_kappa(const std::string& k, std::size_t n) {
  auto lg = ceil_log2(std::max<std::size_t>(n, 1));
  if (k == "log") return std::max<std::uint32_t>(2, lg);
  if (k == "log+1") return lg + 1;
  try {
    std::size_t used = 0;
    auto v = std::stoul(k, &used);
    if (used != k.size()) throw std::invalid_argument(k);
    return static_cast<std::uint32_t>(v);
  } catch (const std::logic_error&) {
    throw ParameterError("kappa must be an integer, 'log' or 'log+1', got '" + k + "'");
  }
}

struct BuildOutput {
  Report report;
  SpannerEdgeSet h;
};

inline BuildOutput run_build(const RunSpec& spec, const LoadedGraph& lg, BuildOptions opt = {}) {
  const auto& g = lg.graph;
  BuildOutput out;
  switch (spec.algorithm) {
    case Algorithm::polylog: {
      auto kappa = stage("spanner_polylog", [&] { return resolve_kappa(spec.kappa.empty() ? "2" : spec.kappa, g.vertex_count()); });
      auto b = stage("spanner_polylog", [&] { return build_spanner_polylog(g, kappa, opt); });
      auto s = stage("verify_cli", [&] { return measure_stretch(g, b.h.edges()); });
      out.report = make_report_polylog(spec.graph, lg.meta, g, kappa, b, s, opt.B);
      out.h = std::move(b.h);
      break;
    }
    case Algorithm::sparse:
    case Algorithm::skeleton: {
      const bool skel = spec.algorithm == Algorithm::skeleton;
      const char* mod = "spanner_sparse";
      auto kappa = stage(mod, [&] {
        if (skel && spec.kappa.empty()) return skeleton_kappa(g.vertex_count());
        if (spec.kappa.empty()) throw ParameterError("sparse construction needs --kappa");
        return resolve_kappa(spec.kappa, g.vertex_count());
      });
      auto rho = stage(mod, [&] {
        if (spec.rho) return Rational::parse(*spec.rho);
        if (skel) return kSkeletonRho;
        throw ParameterError("sparse construction needs --rho");
      });
      auto b = stage(mod, [&] { return build_spanner_sparse(g, kappa, rho, opt); });
      auto s = stage("verify_cli", [&] { return measure_stretch(g, b.h.edges()); });
      out.report = make_report_sparse(spec.graph, lg.meta, g, kappa, rho, b, s, to_string(spec.algorithm), opt.B);
      out.h = std::move(b.h);
      break;
    }
  }
  return out;
}

/// Runs the construction; with an output directory, writes spanner.txt and
/// report.json there.
inline Report cmd_build(const RunSpec& spec, BuildOptions opt = {}) {
  auto lg = load_source(spec.graph, spec.seed);
  auto out = run_build(spec, lg, opt);
  if (spec.out) {
    stage("verify_cli", [&] {
      std::filesystem::create_directories(*spec.out);
      std::ofstream e(std::filesystem::path(*spec.out) / "spanner.txt");
      if (!e) throw ModelError("cannot write spanner.txt in " + *spec.out);
      write_edge_list(e, out.h.edges());
      write_report((std::filesystem::path(*spec.out) / "report.json").string(), out.report);
      return 0;
    });
  }
  return out.report;
}

inline EdgeSet load_edge_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  EdgeSet h;
  for (const auto& e : parse_edge_list(in)) h.insert(e);
  return h;
}

/// Stretch of a given spanner file against its graph, optionally against a
/// bound.
inline Report cmd_verify(const std::string& graph_path, const std::string& spanner_path,
                         std::optional<double> bound = std::nullopt) {
  auto lg = load_source(graph_path, 1);
  auto h = stage("graph_core", [&] { return load_edge_set(spanner_path); });
  auto s = stage("verify_cli", [&] { return measure_stretch(lg.graph, h); });
  Report r;
  r.graph_source = graph_path;
  r.graph = lg.meta;
  r.config = {{"command", "verify"}, {"spanner", spanner_path}};
  if (bound) r.config["bound"] = *bound;
  r.stretch = summarize(s);
  r.spanner_edges = h.size();
  if (s.disconnected) {
    r.verdicts.push_back(Verdict::fail("stretch", "infinite stretch: edge " + edge_str(*s.disconnected)));
  } else {
    std::string d = "per-edge " + std::to_string(s.per_edge);
    if (s.all_pairs) d += ", all pairs " + s.all_pairs->str();
    r.verdicts.push_back(Verdict::pass("finite-stretch", d));
    if (bound) {
      bool ok = static_cast<double>(s.per_edge) <= *bound;
      if (s.all_pairs) ok = ok && static_cast<double>(*s.all_pairs) <= *bound;
      r.verdicts.push_back(ok ? Verdict::pass("stretch-bound", d + " <= " + std::to_string(*bound))
                              : Verdict::fail("stretch-bound", d + " exceeds " + std::to_string(*bound)));
    }
    r.bounds.push_back({"stretch_bound", bound ? std::to_string(*bound) : "none", "given"});
  }
  return r;
}

// --- bench ------------------------------------------------------------------

struct BenchPoint {
  std::size_t line = 0;
  std::string algorithm = "polylog";  // resolved when the point runs
  RunSpec spec;
};

struct BenchRow {
  std::size_t line = 0;
  std::string algorithm;
  std::string graph;
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::string kappa;
  std::string rho;
  std::uint64_t rounds = 0;
  std::uint64_t spanner_edges = 0;
  std::uint64_t stretch = 0;
  std::string stretch_bound;
  std::string size_bound;
  std::string round_scale;
  bool ok = false;
  std::string error;

  bool operator==(const BenchRow&) const = default;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BenchRow, line, algorithm, graph, seed, n, m, kappa, rho, rounds, spanner_edges,
                                   stretch, stretch_bound, size_bound, round_scale, ok, error)

/// One point per line: "alg=polylog graph=gen:path:n=32 kappa=2 [rho=0.34] [seed=1]".
/// '#' starts a comment.
inline std::vector<BenchPoint> parse_series(std::istream& in) {
  std::vector<BenchPoint> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string tok;
    BenchPoint p;
    p.line = lineno;
    bool any = false;
    while (ls >> tok) {
      any = true;
      auto eq = tok.find('=');
      auto where = "series line " + std::to_string(lineno) + ": ";
      if (eq == std::string::npos) throw ParseError(where + "'" + tok + "' lacks '='");
      auto k = tok.substr(0, eq);
      auto v = tok.substr(eq + 1);
      if (k == "alg") p.algorithm = v;
      else if (k == "graph") p.spec.graph = v;
      else if (k == "kappa") p.spec.kappa = v;
      else if (k == "rho") p.spec.rho = v;
      else if (k == "seed") {
        try {
          p.spec.seed = std::stoull(v);
        } catch (const std::logic_error&) {
          throw ParseError(where + "bad seed '" + v + "'");
        }
      } else
        throw ParseError(where + "unknown key '" + k + "'");
    }
    if (any) out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<BenchPoint> load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_series(in);
}

inline std::string bound_value(const Report& r, const std::string& name) {
  for (const auto& b : r.bounds)
    if (b.name == name) return b.value;
  return "";
}

/// Runs one point; any failure is recorded in the row.
inline BenchRow run_point(const BenchPoint& p, BuildOptions opt = {}) {
  BenchRow row;
  row.line = p.line;
  row.algorithm = p.algorithm;
  row.graph = p.spec.graph;
  row.seed = p.spec.seed;
  row.kappa = p.spec.kappa;
  row.rho = p.spec.rho.value_or("");
  try {
    auto spec = p.spec;
    spec.algorithm = stage("verify_cli", [&] { return parse_algorithm(p.algorithm); });
    auto lg = load_source(spec.graph, spec.seed);
    row.n = lg.graph.vertex_count();
    row.m = lg.graph.edge_count();
    auto out = run_build(spec, lg, opt);
    const auto& r = out.report;
    row.kappa = r.config.at("kappa").dump();
    if (r.config.contains("rho")) row.rho = r.config.at("rho").get<std::string>();
    row.rounds = r.trace.rounds_elapsed;
    row.spanner_edges = r.spanner_edges;
    row.stretch = r.stretch ? r.stretch->per_edge : 0;
    row.stretch_bound = bound_value(r, "stretch_per_edge");
    row.size_bound = bound_value(r, "size");
    row.round_scale = bound_value(r, "round_scale");
    row.ok = r.ok();
    if (!row.ok)
      for (const auto& v : r.verdicts)
        if (!v.ok) {
          row.error = v.name + ": " + v.detail;
          break;
        }
  } catch (const ModuleError& e) {
    row.ok = false;
    row.error = "[" + e.module() + "] " + e.what();
  }
  return row;
}

/// Worker count from SPANNER_WORKERS, default 1.
inline unsigned worker_count() {
  if (const char* w = std::getenv("SPANNER_WORKERS")) {
    try {
      auto v = std::stoul(w);
      if (v >= 1) return static_cast<unsigned>(std::min<unsigned long>(v, 256));
    } catch (const std::logic_error&) {
    }
    throw ModuleError("verify_cli", std::string("SPANNER_WORKERS must be a positive integer, got '") + w + "'");
  }
  return 1;
}

/// Each point owns its graph and simulator; rows come back in series order.
inline std::vector<BenchRow> run_series(const std::vector<BenchPoint>& pts, unsigned workers, BuildOptions opt = {}) {
  std::vector<BenchRow> rows(pts.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < pts.size();) rows[k] = run_point(pts[k], opt);
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(pts.size())));
  if (workers <= 1) {
    work();
    return rows;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return rows;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "line,algorithm,graph,seed,n,m,kappa,rho,rounds,spanner_edges,stretch,stretch_bound,size_bound,"
         "round_scale,ok,error\n";
  for (const auto& r : rows)
    out << r.line << ',' << csv_field(r.algorithm) << ',' << csv_field(r.graph) << ',' << r.seed << ',' << r.n << ','
        << r.m << ',' << csv_field(r.kappa) << ',' << csv_field(r.rho) << ',' << r.rounds << ',' << r.spanner_edges
        << ',' << r.stretch << ',' << r.stretch_bound << ',' << r.size_bound << ',' << r.round_scale << ','
        << (r.ok ? "true" : "false") << ',' << csv_field(r.error) << '\n';
}

inline nlohmann::json bench_json(const std::vector<BenchRow>& rows) {
  return {{"schema", "cspan-bench/1"}, {"rows", rows}};
}

}  // namespace cspan::cli
