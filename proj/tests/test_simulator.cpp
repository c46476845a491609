#include <gtest/gtest.h>

#include "cspan/generators.hpp"
#include "cspan/sim/simulator.hpp"

using namespace cspan;
using namespace cspan::sim;

namespace {

struct Halt {
  void step(const NodeContext&, std::span<const Incoming>, Outbox&) {}
  std::optional<Round> next_wake(Round) const { return std::nullopt; }
};

struct Flood {
  bool source = false;
  bool seen = false;
  std::optional<Round> heard_at;
  void step(const NodeContext& ctx, std::span<const Incoming> in, Outbox& out) {
    if ((ctx.round == 0 && source) || (!in.empty() && !seen)) {
      seen = true;
      heard_at = ctx.round;
      for (std::uint32_t port = 0; port < ctx.degree(); ++port) {
        bool from = false;
        for (const auto& m : in) from = from || m.port == port;
        if (!from) out.send(port, Message(1));
      }
    }
  }
  std::optional<Round> next_wake(Round) const { return std::nullopt; }
};

struct SendIds {
  std::size_t count = 0;
  void step(const NodeContext& ctx, std::span<const Incoming>, Outbox& out) {
    if (ctx.round == 0 && count) {
      std::vector<VertexId> ids(count, ctx.self);
      Message m(1);
      for (auto v : ids) m.id_slots[m.id_count++] = v;
      out.send(0, m);
    }
  }
  std::optional<Round> next_wake(Round) const { return std::nullopt; }
};

struct DoubleSend {
  void step(const NodeContext& ctx, std::span<const Incoming>, Outbox& out) {
    if (ctx.round == 0 && ctx.degree() > 0) {
      out.send(0, Message(1));
      out.send(0, Message(2));
    }
  }
  std::optional<Round> next_wake(Round) const { return std::nullopt; }
};

struct Sleeper {
  Round wake = 0;
  bool woke = false;
  void step(const NodeContext& ctx, std::span<const Incoming>, Outbox&) {
    if (ctx.round == wake) woke = true;
  }
  std::optional<Round> next_wake(Round now) const {
    return now < wake ? std::optional<Round>(wake) : std::nullopt;
  }
};

struct PortOne {
  void step(const NodeContext& ctx, std::span<const Incoming>, Outbox& out) {
    if (ctx.round == 0 && ctx.degree() >= 2) out.send(1, Message(1));
  }
  std::optional<Round> next_wake(Round) const { return std::nullopt; }
};

Graph path(std::uint32_t n) { return generate_graph(GraphKind::path, {.n = n}).graph; }

}  // namespace

TEST(Simulator, HaltImmediately) {
  auto g = path(4);
  std::vector<Halt> p(4);
  auto t = run(g, p, {});
  EXPECT_EQ(t.rounds_elapsed, 0u);
  EXPECT_EQ(t.total_messages, 0u);
}

TEST(Simulator, FloodOnPathOfThree) {
  auto g = path(3);
  std::vector<Flood> p(3);
  p[0].source = true;
  auto t = run(g, p, {});
  EXPECT_EQ(t.rounds_elapsed, 2u);
  EXPECT_EQ(*p[2].heard_at, 2u);
  EXPECT_EQ(t.messages_per_edge_per_round_max, 1u);
  EXPECT_EQ(t.total_messages, 2u);
}

TEST(Simulator, ThreeIdsWithBTwoIsCongestion) {
  auto g = path(2);
  std::vector<SendIds> p(2);
  p[0].count = 3;
  EXPECT_THROW(run(g, p, {}), CongestionError);
  p[0].count = 2;
  auto t = run(g, p, {});
  EXPECT_EQ(t.max_ids_per_message, 2u);
}

TEST(Simulator, PerEdgeMultiplicity) {
  auto g = path(2);
  std::vector<DoubleSend> p(2);
  EXPECT_THROW(run(g, p, {}), CongestionError);
}

TEST(Simulator, BroadcastModeRejectsPartialSend) {
  auto g = path(3);
  std::vector<PortOne> p(3);
  auto t = run(g, p, {});
  EXPECT_FALSE(t.broadcast_compliant);
  EXPECT_THROW(run(g, p, {.mode = Mode::broadcast_congest}), CongestionError);
}

TEST(Simulator, FastForwardAndSchedule) {
  auto g = path(3);
  std::vector<Sleeper> p(3);
  p[1].wake = 1000000;
  auto t = run(g, p, {});
  EXPECT_TRUE(p[1].woke);
  EXPECT_EQ(t.rounds_elapsed, 1000000u);
  std::vector<Sleeper> q(3);
  auto s = run(g, q, {.schedule_rounds = 50});
  EXPECT_EQ(s.rounds_elapsed, 50u);
  std::vector<Sleeper> r(3);
  r[0].wake = 51;
  EXPECT_THROW(run(g, r, {.schedule_rounds = 50}), RoundBudgetError);
  std::vector<Sleeper> u(3);
  u[0].wake = 10;
  EXPECT_THROW(run(g, u, {.max_rounds = 5}), RoundBudgetError);
}

TEST(Simulator, Determinism) {
  auto g = generate_graph(GraphKind::gnp_connected, {.n = 60, .p = 0.1}, 5).graph;
  auto once = [&] {
    std::vector<Flood> p(g.vertex_count());
    p[7].source = true;
    auto t = run(g, p, {});
    std::vector<Round> heard;
    for (auto& f : p) heard.push_back(*f.heard_at);
    return std::make_pair(t, heard);
  };
  EXPECT_EQ(once(), once());
}

TEST(Simulator, TraceAppend) {
  SimTrace a, b;
  a.rounds_elapsed = 5;
  a.per_round_message_counts = {{1, 2}};
  b.rounds_elapsed = 3;
  b.per_round_message_counts = {{0, 4}};
  b.broadcast_compliant = false;
  a.append(b);
  EXPECT_EQ(a.rounds_elapsed, 8u);
  EXPECT_EQ(a.per_round_message_counts.back(), (std::pair<Round, std::uint64_t>{5, 4}));
  EXPECT_FALSE(a.broadcast_compliant);
}
