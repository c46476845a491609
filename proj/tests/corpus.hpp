#pragma once

// Fixed graph corpus shared by the property tests and the acceptance run.

#include <string>
#include <vector>

#include "cspan/generators.hpp"

namespace cspan::fixtures {

struct CorpusGraph {
  std::string name;
  Graph graph;
};

inline double gnp_p(std::uint64_t seed) {
  static const double ps[] = {0.05, 0.1, 0.2, 0.4};
  return ps[seed % 4];
}

/// rows·cols = n with rows the largest power of two not above √n.
inline GraphParams grid_params(std::uint32_t n) {
  std::uint32_t rows = 1;
  while (4 * rows * rows <= n) rows *= 2;
  return {.n = n, .rows = rows, .cols = n / rows};
}

inline std::vector<CorpusGraph> corpus(std::uint32_t n, std::uint32_t gnp_count = 20) {
  std::vector<CorpusGraph> out;
  auto add = [&](std::string name, GeneratedGraph gg) { out.push_back({std::move(name), std::move(gg.graph)}); };
  auto tag = [&](const char* k) { return std::string(k) + " n=" + std::to_string(n); };
  add(tag("path"), generate_graph(GraphKind::path, {.n = n}));
  add(tag("cycle"), generate_graph(GraphKind::cycle, {.n = n}));
  add(tag("grid"), generate_graph(GraphKind::grid, grid_params(n)));
  add(tag("random_tree"), generate_graph(GraphKind::random_tree, {.n = n}, n));
  add(tag("complete"), generate_graph(GraphKind::complete, {.n = n}));
  for (std::uint64_t s = 1; s <= gnp_count; ++s)
    add(tag("gnp") + " p=" + std::to_string(gnp_p(s)).substr(0, 4) + " seed=" + std::to_string(s),
        generate_graph(GraphKind::gnp_connected, {.n = n, .p = gnp_p(s)}, s));
  return out;
}

inline const std::vector<std::uint32_t> kCorpusSizes = {16, 32, 64, 128, 256};

}  // namespace cspan::fixtures
