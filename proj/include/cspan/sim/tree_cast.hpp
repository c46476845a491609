#pragma once

// Pipelined casts along cluster trees: FIFO per edge, one message per edge
// per round, children served in ascending ID order (ports are ID-sorted).

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "cspan/cluster.hpp"
#include "cspan/sim/simulator.hpp"

namespace cspan::sim {

/// A vertex's view of its cluster tree.
struct TreeLinks {
  std::optional<std::uint32_t> parent;   // port
  std::vector<std::uint32_t> children;   // ports, ascending

  bool is_root() const { return !parent; }
  bool is_child_port(std::uint32_t p) const { return std::binary_search(children.begin(), children.end(), p); }
  bool is_tree_port(std::uint32_t p) const { return parent == p || is_child_port(p); }
};

/// Per-vertex tree links for a set of clusters; vertices outside have none.
inline std::vector<TreeLinks> tree_links(const Graph& g, std::span<const Cluster> clusters) {
  std::vector<TreeLinks> out(g.vertex_count());
  for (const auto& c : clusters)
    for (auto [child, par] : c.parent) {
      Index a = g.at(child);
      Index b = g.at(par);
      auto up = g.port_of(a, b);
      if (!up) throw ModelError("cluster tree uses a non-edge");
      out[a].parent = *up;
      out[b].children.push_back(*g.port_of(b, a));
    }
  for (auto& t : out) std::sort(t.children.begin(), t.children.end());
  return out;
}

/// Relay half of a pipelined downcast.
class DowncastRelay {
 public:
  void push(const Message& m) { queue_.push_back(m); }
  bool idle() const { return queue_.empty(); }

  /// Sends the oldest queued message to every child.
  void flush(const TreeLinks& links, Outbox& out) {
    if (queue_.empty()) return;
    for (auto p : links.children) out.send(p, queue_.front());
    queue_.pop_front();
  }

 private:
  std::deque<Message> queue_;
};

/// Relay half of a capped, deduplicating upcast. Items are keyed by their
/// first ID. At most `cap` distinct keys are ever saved or forwarded.
class UpcastRelay {
 public:
  explicit UpcastRelay(std::uint64_t cap = 0) : cap_(cap) {}

  /// Saves and enqueues m unless its key is known or the list is full.
  bool offer(const Message& m) {
    auto key = m.id(0);
    if (keys_.count(key) || saved_.size() >= cap_) return false;
    keys_.insert(key);
    saved_.push_back(m);
    queue_.push_back(m);
    return true;
  }

  void flush(const TreeLinks& links, Outbox& out) {
    if (queue_.empty()) return;
    if (links.parent) out.send(*links.parent, queue_.front());
    queue_.pop_front();
  }

  bool idle() const { return queue_.empty(); }
  const std::vector<Message>& saved() const { return saved_; }

 private:
  std::uint64_t cap_;
  std::set<VertexId> keys_;
  std::vector<Message> saved_;
  std::deque<Message> queue_;
};

namespace detail {

class DowncastProgram {
 public:
  DowncastProgram(TreeLinks links, std::vector<Message> initial) : links_(std::move(links)) {
    for (auto& m : initial) relay_.push(m);
  }

  void step(const NodeContext&, std::span<const Incoming> in, Outbox& out) {
    for (const auto& m : in)
      if (links_.parent == m.port) {
        received_.push_back(m.msg);
        relay_.push(m.msg);
      }
    relay_.flush(links_, out);
  }
  std::optional<Round> next_wake(Round now) const {
    return relay_.idle() ? std::nullopt : std::optional<Round>(now + 1);
  }

  std::vector<Message> received_;

 private:
  TreeLinks links_;
  DowncastRelay relay_;
};

class UpcastProgram {
 public:
  UpcastProgram(TreeLinks links, std::vector<Message> own, std::uint64_t cap)
      : links_(std::move(links)), own_(std::move(own)), relay_(cap) {}

  void step(const NodeContext& ctx, std::span<const Incoming> in, Outbox& out) {
    if (ctx.round == 0)
      for (const auto& m : own_) relay_.offer(m);
    for (const auto& m : in)
      if (links_.is_child_port(m.port)) relay_.offer(m.msg);
    relay_.flush(links_, out);
  }
  std::optional<Round> next_wake(Round now) const {
    return relay_.idle() ? std::nullopt : std::optional<Round>(now + 1);
  }

  const UpcastRelay& relay() const { return relay_; }
  bool is_root() const { return links_.is_root(); }

 private:
  TreeLinks links_;
  std::vector<Message> own_;
  UpcastRelay relay_;
};

}  // namespace detail

struct DowncastResult {
  Round rounds = 0;
  std::map<VertexId, std::vector<Message>> received;  // non-root members
  SimTrace trace;
};

/// Each cluster's center sends its message list to every member. Clusters
/// run concurrently on disjoint trees.
inline DowncastResult pipelined_downcast(const Graph& g, std::span<const Cluster> clusters,
                                         const std::vector<std::vector<Message>>& msgs, SimConfig config = {}) {
  if (msgs.size() != clusters.size()) throw ModelError("one message list per cluster");
  auto links = tree_links(g, clusters);
  std::vector<std::vector<Message>> initial(g.vertex_count());
  for (std::size_t k = 0; k < clusters.size(); ++k) initial[g.at(clusters[k].center)] = msgs[k];
  std::vector<detail::DowncastProgram> progs;
  progs.reserve(g.vertex_count());
  for (Index v = 0; v < g.vertex_count(); ++v) progs.emplace_back(links[v], initial[v]);
  DowncastResult r;
  r.trace = run(g, progs, config);
  r.rounds = r.trace.rounds_elapsed;
  for (const auto& c : clusters)
    for (auto v : c.members)
      if (v != c.center) r.received[v] = progs[g.at(v)].received_;
  return r;
}

inline DowncastResult pipelined_downcast(const Graph& g, const Cluster& cluster, const std::vector<Message>& msgs,
                                         SimConfig config = {}) {
  return pipelined_downcast(g, std::span<const Cluster>(&cluster, 1), {msgs}, config);
}

struct UpcastResult {
  Round rounds = 0;
  std::map<VertexId, std::vector<Message>> root_knowledge;  // center → saved items
  std::map<VertexId, std::size_t> stored;                   // every member → items it saved
  SimTrace trace;
};

/// Each member starts with its own items; the center ends with at most `cap`
/// distinct keys, and with all of them when there are fewer than `cap`.
inline UpcastResult pipelined_upcast(const Graph& g, std::span<const Cluster> clusters,
                                     const std::map<VertexId, std::vector<Message>>& items, std::uint64_t cap,
                                     SimConfig config = {}) {
  auto links = tree_links(g, clusters);
  std::vector<detail::UpcastProgram> progs;
  progs.reserve(g.vertex_count());
  for (Index v = 0; v < g.vertex_count(); ++v) {
    auto it = items.find(g.id(v));
    progs.emplace_back(links[v], it == items.end() ? std::vector<Message>{} : it->second, cap);
  }
  UpcastResult r;
  r.trace = run(g, progs, config);
  r.rounds = r.trace.rounds_elapsed;
  for (const auto& c : clusters) {
    r.root_knowledge[c.center] = progs[g.at(c.center)].relay().saved();
    for (auto v : c.members) r.stored[v] = progs[g.at(v)].relay().saved().size();
  }
  return r;
}

inline UpcastResult pipelined_upcast(const Graph& g, const Cluster& cluster,
                                     const std::map<VertexId, std::vector<Message>>& items, std::uint64_t cap,
                                     SimConfig config = {}) {
  return pipelined_upcast(g, std::span<const Cluster>(&cluster, 1), items, cap, config);
}

}  // namespace cspan::sim
