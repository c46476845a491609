#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cspan/cli.hpp"

namespace {

using namespace cspan;
using namespace cspan::cli;

void print_verdicts(const Report& r) {
  for (const auto& v : r.verdicts)
    if (!v.ok) std::cerr << "FAIL " << v.name << ": " << v.detail << "\n";
  std::cerr << (r.ok() ? "all checks passed" : "some checks failed") << " (" << r.verdicts.size() << " checks)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic CONGEST spanner constructions with verification"};
  app.set_config("--config", "", "TOML or INI file with option defaults; flags override");
  app.require_subcommand(1);

  RunSpec spec;
  std::string alg = "polylog";
  std::string rho;
  std::string out_dir;
  auto* build = app.add_subcommand("build", "Build a spanner and write spanner.txt and report.json");
  build->add_option("--alg", alg, "polylog, sparse or skeleton")->check(CLI::IsMember({"polylog", "sparse", "skeleton"}));
  build->add_option("--graph", spec.graph, "edge-list file or gen:<kind>:<k=v,...>")->required();
  build->add_option("--kappa", spec.kappa, "integer, log or log+1");
  build->add_option("--rho", rho, "rational or decimal, 1/kappa <= rho < 1/2");
  build->add_option("--seed", spec.seed, "generator seed");
  build->add_option("--out", out_dir, "output directory")->required();

  std::string vgraph, vspanner, vout;
  std::optional<double> bound;
  auto* verify = app.add_subcommand("verify", "Measure the stretch of a spanner file");
  verify->add_option("--graph", vgraph, "edge-list file or gen:<kind>:<k=v,...>")->required();
  verify->add_option("--spanner", vspanner, "edge-list file")->required();
  verify->add_option("--bound", bound, "stretch bound to check");
  verify->add_option("--out", vout, "write the report here instead of stdout");

  std::string series, bout;
  auto* bench = app.add_subcommand("bench", "Run a series of builds; worker count from SPANNER_WORKERS");
  bench->add_option("--series", series, "one point per line: alg=... graph=... kappa=... [rho=...] [seed=...]")
      ->required();
  bench->add_option("--out", bout, "directory for bench.csv and bench.json (stdout CSV if omitted)");

  std::string gspec, gout;
  std::uint64_t gseed = 1;
  auto* gen = app.add_subcommand("generate", "Write a generated graph as an edge list");
  gen->add_option("spec", gspec, "<kind>:<k=v,...>")->required();
  gen->add_option("--seed", gseed, "generator seed");
  gen->add_option("--out", gout, "output file (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      spec.algorithm = parse_algorithm(alg);
      if (!rho.empty()) spec.rho = rho;
      spec.out = out_dir;
      auto r = cmd_build(spec);
      print_verdicts(r);
      std::cout << (std::filesystem::path(out_dir) / "report.json").string() << "\n";
      return r.ok() ? 0 : 1;
    }
    if (*verify) {
      auto r = cmd_verify(vgraph, vspanner, bound);
      if (vout.empty()) std::cout << dump(r) << "\n";
      else write_report(vout, r);
      print_verdicts(r);
      return r.ok() ? 0 : 1;
    }
    if (*bench) {
      auto pts = stage("verify_cli", [&] { return load_series(series); });
      auto rows = run_series(pts, worker_count());
      bool ok = true;
      for (const auto& r : rows) ok = ok && r.ok;
      if (bout.empty()) {
        write_csv(std::cout, rows);
      } else {
        std::filesystem::create_directories(bout);
        std::ofstream csv(std::filesystem::path(bout) / "bench.csv");
        if (!csv) throw ModuleError("verify_cli", "cannot write bench.csv in " + bout);
        write_csv(csv, rows);
        std::ofstream js(std::filesystem::path(bout) / "bench.json");
        js << bench_json(rows).dump(2) << "\n";
      }
      for (const auto& r : rows)
        if (!r.ok) std::cerr << "line " << r.line << ": " << r.error << "\n";
      return ok ? 0 : 1;
    }
    if (*gen) {
      auto lg = load_source("gen:" + gspec, gseed);
      if (gout.empty()) {
        write_edge_list(std::cout, lg.graph.edge_set());
      } else {
        auto parent = std::filesystem::path(gout).parent_path();
        if (!parent.empty()) std::filesystem::create_directories(parent);
        std::ofstream f(gout);
        if (!f) throw ModuleError("verify_cli", "cannot write " + gout);
        write_edge_list(f, lg.graph.edge_set());
      }
      return 0;
    }
  } catch (const ModuleError& e) {
    std::cerr << "error [" << e.module() << "]: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "error [verify_cli]: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
