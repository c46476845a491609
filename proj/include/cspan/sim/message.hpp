#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>

#include "cspan/graph.hpp"

namespace cspan::sim {

using Round = std::uint64_t;

/// Physical room for IDs; the simulator enforces the configured B, which is
/// usually smaller, so oversized messages can be built and then rejected.
inline constexpr std::size_t kIdStorage = 8;

struct Message {
  std::uint16_t tag = 0;
  std::uint8_t id_count = 0;
  std::array<VertexId, kIdStorage> id_slots{};
  std::optional<std::int64_t> scalar;

  Message() = default;
  explicit Message(std::uint16_t t, std::initializer_list<VertexId> ids = {},
                   std::optional<std::int64_t> s = std::nullopt)
      : tag(t), scalar(s) {
    if (ids.size() > kIdStorage) throw CongestionError("message exceeds physical ID storage");
    for (auto v : ids) id_slots[id_count++] = v;
  }

  std::span<const VertexId> ids() const { return {id_slots.data(), id_count}; }
  VertexId id(std::size_t k) const { return id_slots[k]; }

  bool operator==(const Message& o) const {
    if (tag != o.tag || id_count != o.id_count || scalar != o.scalar) return false;
    for (std::size_t k = 0; k < id_count; ++k)
      if (id_slots[k] != o.id_slots[k]) return false;
    return true;
  }
};

struct Incoming {
  std::uint32_t port = 0;
  Message msg;
};

/// What a node learns about itself. Neighbor IDs are listed in port order.
struct NodeContext {
  VertexId self;
  Round round = 0;
  std::span<const VertexId> neighbor_ids;

  std::size_t degree() const { return neighbor_ids.size(); }
};

class Outbox {
 public:
  explicit Outbox(std::size_t degree = 0) : slots_(degree) {}

  void send(std::uint32_t port, const Message& m) {
    if (port >= slots_.size()) throw ModelError("send on nonexistent port");
    if (slots_[port]) throw CongestionError("two messages on one edge in one round");
    slots_[port] = m;
    ++sent_;
  }

  void broadcast(const Message& m) {
    for (std::uint32_t p = 0; p < slots_.size(); ++p) send(p, m);
  }

  std::size_t degree() const { return slots_.size(); }
  std::size_t sent() const { return sent_; }
  const std::optional<Message>& at(std::uint32_t port) const { return slots_[port]; }

  void reset(std::size_t degree) {
    slots_.assign(degree, std::nullopt);
    sent_ = 0;
  }

 private:
  std::vector<std::optional<Message>> slots_;
  std::size_t sent_ = 0;
};

}  // namespace cspan::sim
