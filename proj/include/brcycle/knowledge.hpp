#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "brcycle/digraph.hpp"
#include "brcycle/error.hpp"

namespace brcycle {

struct QueryRecord {
  Vertex vertex = 0;
  std::vector<Vertex> answer;
  bool operator==(const QueryRecord&) const = default;
};

// Ordered transcript; queried vertices are pairwise distinct.
using QueryHistory = std::vector<QueryRecord>;

inline bool has_distinct_queries(std::span<const QueryRecord> records) {
  std::unordered_set<Vertex> seen;
  for (const auto& r : records)
    if (!seen.insert(r.vertex).second) return false;
  return true;
}

// The digraph a transcript determines: every queried vertex and every answer
// entry, with an edge u->v for each entry v in the answer for u. A sink is a
// vertex queried with an empty answer.
class KnowledgeGraph {
 public:
  void add_record(Vertex u, std::span<const Vertex> answer) {
    const std::size_t iu = intern(u);
    if (nodes_[iu].queried)
      throw Error(Errc::InvalidKnowledge, "vertex " + std::to_string(u) + " queried twice");
    nodes_[iu].queried = true;
    for (Vertex v : answer) {
      const std::size_t iv = intern(v);
      nodes_[iu].out.push_back(v);
      nodes_[iv].in.push_back(u);
      ++edges_;
    }
  }
  void add_record(const QueryRecord& r) { add_record(r.vertex, r.answer); }

  // Adds v with no edges (no-op if present).
  void touch(Vertex v) { intern(v); }

  bool contains(Vertex v) const { return index_.count(v) != 0; }
  bool queried(Vertex v) const {
    auto n = find(v);
    return n && n->queried;
  }
  bool is_sink(Vertex v) const {
    auto n = find(v);
    return n && n->queried && n->out.empty();
  }
  std::span<const Vertex> successors(Vertex v) const {
    auto n = find(v);
    return n ? std::span<const Vertex>(n->out) : std::span<const Vertex>();
  }
  std::span<const Vertex> predecessors(Vertex v) const {
    auto n = find(v);
    return n ? std::span<const Vertex>(n->in) : std::span<const Vertex>();
  }
  // Vertices in first-seen order.
  std::span<const Vertex> vertices() const { return order_; }
  std::size_t vertex_count() const { return order_.size(); }
  std::size_t edge_count() const { return edges_; }

  std::vector<Vertex> sinks() const {
    std::vector<Vertex> out;
    for (Vertex v : order_)
      if (is_sink(v)) out.push_back(v);
    return out;
  }

 private:
  struct Node {
    std::vector<Vertex> out, in;
    bool queried = false;
  };

  std::size_t intern(Vertex v) {
    auto [it, inserted] = index_.try_emplace(v, nodes_.size());
    if (inserted) {
      nodes_.emplace_back();
      order_.push_back(v);
    }
    return it->second;
  }
  const Node* find(Vertex v) const {
    auto it = index_.find(v);
    return it == index_.end() ? nullptr : &nodes_[it->second];
  }

  std::unordered_map<Vertex, std::size_t> index_;
  std::vector<Node> nodes_;
  std::vector<Vertex> order_;
  std::size_t edges_ = 0;
};

inline KnowledgeGraph knowledge_graph(std::span<const QueryRecord> records) {
  KnowledgeGraph kg;
  for (const auto& r : records) kg.add_record(r);
  return kg;
}

// Record k (1-based) is a surprise when an answer entry already appears in the
// knowledge graph of the first k-1 records. The queried vertex itself does not
// count.
inline bool is_surprise(std::span<const QueryRecord> records, std::size_t k) {
  if (k < 1 || k > records.size())
    throw Error(Errc::IndexOutOfRange, "record index " + std::to_string(k) + " out of range");
  std::unordered_set<Vertex> seen;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    seen.insert(records[i].vertex);
    seen.insert(records[i].answer.begin(), records[i].answer.end());
  }
  for (Vertex v : records[k - 1].answer)
    if (seen.count(v)) return true;
  return false;
}

enum class EpochEnd { Surprise, Timeout };

// Half-open range [begin, end) of records.
struct Epoch {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::optional<EpochEnd> reason;  // set for closed epochs
  std::size_t size() const { return end - begin; }
  bool operator==(const Epoch&) const = default;
};

struct EpochDecomposition {
  std::vector<Epoch> closed;
  Epoch current;
  std::size_t epoch_cap = 0;
  bool operator==(const EpochDecomposition&) const = default;
};

inline std::span<const QueryRecord> segment(std::span<const QueryRecord> records, const Epoch& e) {
  return records.subspan(e.begin, e.size());
}

// Serial scan: an epoch closes at a surprise or when it holds epoch_cap
// records. A record that is both closes with reason Surprise.
inline EpochDecomposition decompose_epochs(std::span<const QueryRecord> records,
                                           std::size_t epoch_cap) {
  if (epoch_cap == 0) throw Error(Errc::InvalidParams, "epoch cap must be positive");
  EpochDecomposition out;
  out.epoch_cap = epoch_cap;
  std::unordered_set<Vertex> seen;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    bool surprise = false;
    for (Vertex v : r.answer) surprise = surprise || seen.count(v) != 0;
    seen.insert(r.vertex);
    seen.insert(r.answer.begin(), r.answer.end());
    if (surprise || i + 1 - begin == epoch_cap) {
      out.closed.push_back({begin, i + 1, surprise ? EpochEnd::Surprise : EpochEnd::Timeout});
      begin = i + 1;
    }
  }
  out.current = Epoch{begin, records.size(), std::nullopt};
  return out;
}

// A directed cycle through last.vertex using an edge last.vertex -> a for some
// answer entry a that already reaches last.vertex in kg. Returned starting at
// last.vertex; the path back is a shortest one.
inline std::optional<std::vector<Vertex>> detect_cycle(const KnowledgeGraph& kg,
                                                       const QueryRecord& last) {
  const Vertex root = last.vertex;
  if (last.answer.empty() || !kg.contains(root)) return std::nullopt;
  std::unordered_set<Vertex> targets(last.answer.begin(), last.answer.end());
  // next_hop[x] is x's successor on a shortest x ~> root path.
  std::unordered_map<Vertex, Vertex> next_hop;
  next_hop.emplace(root, root);
  std::deque<Vertex> queue{root};
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    for (Vertex p : kg.predecessors(x)) {
      if (!next_hop.emplace(p, x).second) continue;
      if (targets.count(p)) {
        std::vector<Vertex> cycle{root};
        for (Vertex y = p; y != root; y = next_hop.at(y)) cycle.push_back(y);
        return cycle;
      }
      queue.push_back(p);
    }
  }
  return std::nullopt;
}

// Distinct vertices, each consecutive pair (wrapping) an edge of graph.
inline bool verify_cycle(const Digraph& graph, std::span<const Vertex> cycle) {
  if (cycle.size() < 2) return false;
  std::unordered_set<Vertex> distinct;
  for (Vertex v : cycle) {
    if (v >= graph.vertex_count() || !distinct.insert(v).second) return false;
  }
  for (std::size_t i = 0; i < cycle.size(); ++i)
    if (!graph.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
  return true;
}

}  // namespace brcycle
