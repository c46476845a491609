#pragma once

// Round-synchronous message passing over a Graph.
//
// Round 0 steps every node with an empty inbox. A message sent in round r is
// delivered in round r+1. In later rounds only nodes with mail or with a
// requested wake-up are stepped; a node that neither receives nor asked to
// wake has nothing to do, so skipping it does not change any outcome. When
// nothing is in flight, time jumps to the earliest wake-up; with none left,
// the run is over.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cspan/graph.hpp"
#include "cspan/sim/message.hpp"

namespace cspan::sim {

enum class Mode { congest, broadcast_congest };

struct SimConfig {
  std::uint32_t B = 2;
  Mode mode = Mode::congest;
  Round max_rounds = Round{1} << 62;
  /// Fixed schedule length. When set, no activity may occur after it and the
  /// run is charged exactly this many rounds.
  std::optional<Round> schedule_rounds;
  /// Largest |scalar|; 0 means (n+1)^2.
  std::int64_t scalar_limit = 0;
};

template <class P>
concept NodeProgram = requires(P p, const P cp, const NodeContext& ctx, std::span<const Incoming> in, Outbox& out,
                               Round r) {
  { p.step(ctx, in, out) };
  { cp.next_wake(r) } -> std::convertible_to<std::optional<Round>>;
};

struct SimTrace {
  Round rounds_elapsed = 0;
  std::uint32_t max_ids_per_message = 0;
  std::uint32_t messages_per_edge_per_round_max = 0;
  /// (round, messages sent in that round), only for rounds with traffic;
  /// rounds are counted from the start of the first appended run.
  std::vector<std::pair<Round, std::uint64_t>> per_round_message_counts;
  std::uint64_t total_messages = 0;
  /// Every node that sent in some round sent one identical message on every port.
  bool broadcast_compliant = true;
  std::uint64_t runs = 0;

  void append(const SimTrace& t) {
    for (auto [r, c] : t.per_round_message_counts) per_round_message_counts.emplace_back(rounds_elapsed + r, c);
    rounds_elapsed += t.rounds_elapsed;
    max_ids_per_message = std::max(max_ids_per_message, t.max_ids_per_message);
    messages_per_edge_per_round_max = std::max(messages_per_edge_per_round_max, t.messages_per_edge_per_round_max);
    total_messages += t.total_messages;
    broadcast_compliant = broadcast_compliant && t.broadcast_compliant;
    runs += t.runs;
  }

  bool operator==(const SimTrace&) const = default;
};

template <NodeProgram P>
SimTrace run(const Graph& g, std::vector<P>& programs, const SimConfig& config) {
  const std::size_t n = g.vertex_count();
  if (programs.size() != n) throw ModelError("need exactly one program per vertex");
  if (config.B < 1) throw ModelError("B must be at least 1");
  if (config.max_rounds == 0) throw ModelError("max_rounds must be positive");
  const std::int64_t scalar_limit =
      config.scalar_limit > 0 ? config.scalar_limit : static_cast<std::int64_t>((n + 1) * (n + 1));

  SimTrace trace;
  trace.runs = 1;
  std::vector<std::vector<Incoming>> inbox(n), next_inbox(n);
  std::vector<Index> with_mail, next_with_mail;
  std::vector<std::optional<Round>> wake_at(n);
  using Entry = std::pair<Round, Index>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> wakes;
  std::vector<char> active_flag(n, 0);
  std::vector<Index> active;
  Outbox out;
  Round last = 0;
  bool any_step = false;

  auto step_node = [&](Index v, Round r, std::uint64_t& sent_this_round) {
    NodeContext ctx{g.id(v), r, g.neighbor_ids(v)};
    auto& in = inbox[v];
    std::sort(in.begin(), in.end(), [](const Incoming& a, const Incoming& b) { return a.port < b.port; });
    out.reset(g.degree(v));
    programs[v].step(ctx, std::span<const Incoming>(in), out);
    in.clear();
    if (out.sent() > 0) {
      const Message* first = nullptr;
      bool uniform = out.sent() == out.degree();
      for (std::uint32_t p = 0; p < out.degree(); ++p) {
        const auto& m = out.at(p);
        if (!m) continue;
        if (m->id_count > config.B)
          throw CongestionError("vertex " + std::to_string(g.id(v).value) + " sent " +
                                std::to_string(m->id_count) + " IDs with B=" + std::to_string(config.B));
        if (m->scalar && (*m->scalar > scalar_limit || *m->scalar < -scalar_limit))
          throw CongestionError("scalar out of range at vertex " + std::to_string(g.id(v).value));
        trace.max_ids_per_message = std::max<std::uint32_t>(trace.max_ids_per_message, m->id_count);
        if (!first) first = &*m;
        else if (!(*m == *first)) uniform = false;
        Index w = g.neighbors(v)[p];
        if (next_inbox[w].empty()) next_with_mail.push_back(w);
        next_inbox[w].push_back({g.reverse_port(v, p), *m});
      }
      if (!uniform) {
        trace.broadcast_compliant = false;
        if (config.mode == Mode::broadcast_congest)
          throw CongestionError("vertex " + std::to_string(g.id(v).value) +
                                " sent a non-uniform message in broadcast mode");
      }
      trace.messages_per_edge_per_round_max = std::max<std::uint32_t>(trace.messages_per_edge_per_round_max, 1);
      sent_this_round += out.sent();
    }
    auto w = programs[v].next_wake(r);
    if (w && *w <= r) throw ModelError("wake-up must lie in the future");
    wake_at[v] = w;
    if (w) wakes.emplace(*w, v);
  };

  auto check_budget = [&](Round r) {
    if (r > config.max_rounds) throw RoundBudgetError("round cap " + std::to_string(config.max_rounds) + " exceeded");
    if (config.schedule_rounds && r > *config.schedule_rounds)
      throw RoundBudgetError("activity at round " + std::to_string(r) + " beyond schedule of " +
                             std::to_string(*config.schedule_rounds));
  };

  Round r = 0;
  for (;;) {
    if (r > 0) check_budget(r);
    active.clear();
    if (r == 0) {
      for (Index v = 0; v < n; ++v) active.push_back(v);
    } else {
      for (Index v : with_mail) {
        active_flag[v] = 1;
        active.push_back(v);
      }
      while (!wakes.empty() && wakes.top().first == r) {
        auto [wr, v] = wakes.top();
        wakes.pop();
        if (wake_at[v] == wr && !active_flag[v]) {
          active_flag[v] = 1;
          active.push_back(v);
        }
      }
      std::sort(active.begin(), active.end());
      for (Index v : active) active_flag[v] = 0;
    }
    std::uint64_t sent = 0;
    for (Index v : active) {
      if (r > 0 && wake_at[v] == r) wake_at[v].reset();
      step_node(v, r, sent);
    }
    if (!active.empty()) {
      last = r;
      any_step = true;
    }
    if (sent > 0) {
      trace.per_round_message_counts.emplace_back(r, sent);
      trace.total_messages += sent;
    }
    std::swap(inbox, next_inbox);
    with_mail.swap(next_with_mail);
    next_with_mail.clear();

    if (!with_mail.empty()) {
      r += 1;
      continue;
    }
    while (!wakes.empty() && wake_at[wakes.top().second] != wakes.top().first) wakes.pop();
    if (wakes.empty()) break;
    r = wakes.top().first;
  }
  (void)any_step;
  trace.rounds_elapsed = config.schedule_rounds ? *config.schedule_rounds : last;
  return trace;
}

}  // namespace cspan::sim
