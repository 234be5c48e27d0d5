#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "brcycle/digraph.hpp"
#include "brcycle/error.hpp"
#include "brcycle/graph_core.hpp"
#include "brcycle/knowledge.hpp"

namespace brcycle {

enum class QueryModel { AdjList, Vertex, ColorRevelation };

// Strict: re-querying a vertex is an error. Lenient: a repeat returns the
// recorded answer and costs nothing.
enum class RepeatPolicy { Strict, Lenient };

// Query access to a hidden instance. The oracle keeps non-owning pointers; the
// graph (and coloring) must outlive it.
//
// Every vertex query is appended to the history and the live knowledge graph.
// When the instance has a coloring, epochs are tracked with cap L/2; under
// ColorRevelation each epoch close reveals the hidden color of every vertex
// seen so far.
class Oracle {
 public:
  Oracle(const BRPair& pair, QueryModel model, RepeatPolicy policy = RepeatPolicy::Strict)
      : Oracle(&pair.graph, &pair.coloring, pair.params.epoch_cap(), model, policy) {}

  Oracle(const Digraph& graph, QueryModel model, RepeatPolicy policy = RepeatPolicy::Strict)
      : Oracle(&graph, nullptr, 0, model, policy) {
    if (model == QueryModel::ColorRevelation)
      throw Error(Errc::WrongModel, "color revelation needs a colored instance");
  }

  QueryModel model() const { return model_; }
  RepeatPolicy policy() const { return policy_; }
  void set_policy(RepeatPolicy p) { policy_ = p; }

  // Public knowledge: vertex count and outdegree bound.
  std::size_t vertex_count() const { return graph_->vertex_count(); }
  std::size_t outdegree_bound() const { return graph_->outdegree_bound(); }
  std::size_t epoch_cap() const { return epoch_cap_; }

  std::span<const Vertex> query_vertex(Vertex u) { return query_vertex(u, policy_); }

  std::span<const Vertex> query_vertex(Vertex u, RepeatPolicy policy) {
    if (model_ == QueryModel::AdjList)
      throw Error(Errc::WrongModel, "vertex queries are not available in the adjacency model");
    check_vertex(u);
    if (record_of_[u] >= 0) {
      if (policy == RepeatPolicy::Strict)
        throw Error(Errc::RepeatedQuery, "vertex " + std::to_string(u) + " already queried");
      return graph_->out(u);
    }
    const auto answer = graph_->out(u);
    bool surprise = false;
    for (Vertex v : answer) surprise = surprise || seen_[v];
    record_of_[u] = static_cast<std::int64_t>(history_.size());
    history_.push_back(QueryRecord{u, std::vector<Vertex>(answer.begin(), answer.end())});
    surprise_.push_back(surprise);
    kg_.add_record(history_.back());
    mark_seen(u);
    for (Vertex v : answer) mark_seen(v);
    ++vertex_queries_;

    if (epoch_cap_ > 0) {
      epochs_.current.end = history_.size();
      if (surprise || epochs_.current.size() == epoch_cap_) {
        epochs_.current.reason = surprise ? EpochEnd::Surprise : EpochEnd::Timeout;
        epochs_.closed.push_back(epochs_.current);
        epochs_.current = Epoch{history_.size(), history_.size(), std::nullopt};
        if (model_ == QueryModel::ColorRevelation) reveal_all_seen();
      }
    }
    return answer;
  }

  // i is 1-based. Absent when u has fewer than i neighbors. Repeats allowed.
  std::optional<Vertex> query_adj(Vertex u, std::size_t i) {
    if (model_ != QueryModel::AdjList)
      throw Error(Errc::WrongModel, "adjacency queries need the adjacency model");
    check_vertex(u);
    if (i < 1 || (outdegree_bound() > 0 && i > outdegree_bound()) ||
        (outdegree_bound() == 0 && i > 1))
      throw Error(Errc::IndexOutOfRange, "neighbor index " + std::to_string(i) + " out of range");
    ++adj_queries_;
    const auto list = graph_->out(u);
    if (i > list.size()) return std::nullopt;
    return list[i - 1];
  }

  bool queried(Vertex u) const { return u < record_of_.size() && record_of_[u] >= 0; }
  // Whether the k-th record (1-based) was a surprise.
  bool was_surprise(std::size_t k) const { return surprise_.at(k - 1); }

  const QueryHistory& history() const { return history_; }
  const KnowledgeGraph& knowledge() const { return kg_; }
  const EpochDecomposition& epochs() const { return epochs_; }
  const PartialColoring& revealed() const { return revealed_; }

  std::uint64_t vertex_query_count() const { return vertex_queries_; }
  std::uint64_t adj_query_count() const { return adj_queries_; }
  std::uint64_t query_count() const { return vertex_queries_ + adj_queries_; }

 private:
  Oracle(const Digraph* graph, const Coloring* coloring, std::size_t cap, QueryModel model,
         RepeatPolicy policy)
      : graph_(graph),
        coloring_(coloring),
        epoch_cap_(cap),
        model_(model),
        policy_(policy),
        record_of_(graph->vertex_count(), -1),
        seen_(graph->vertex_count(), 0) {
    epochs_.epoch_cap = cap;
  }

  void check_vertex(Vertex u) const {
    if (u >= graph_->vertex_count())
      throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(u) + " out of range");
  }
  void mark_seen(Vertex v) {
    if (!seen_[v]) {
      seen_[v] = 1;
      seen_order_.push_back(v);
    }
  }
  void reveal_all_seen() {
    for (; revealed_upto_ < seen_order_.size(); ++revealed_upto_) {
      const Vertex v = seen_order_[revealed_upto_];
      revealed_.emplace(v, (*coloring_)[v]);
    }
  }

  const Digraph* graph_;
  const Coloring* coloring_;
  std::size_t epoch_cap_;
  QueryModel model_;
  RepeatPolicy policy_;

  std::vector<std::int64_t> record_of_;
  std::vector<std::uint8_t> seen_;
  std::vector<Vertex> seen_order_;
  std::size_t revealed_upto_ = 0;

  QueryHistory history_;
  std::vector<bool> surprise_;
  KnowledgeGraph kg_;
  EpochDecomposition epochs_;
  PartialColoring revealed_;
  std::uint64_t vertex_queries_ = 0;
  std::uint64_t adj_queries_ = 0;
};

// The hidden pair witnesses (records, revealed) as a valid knowledge pair:
// distinct queries, answers match the graph, and revealed is exactly the
// hidden coloring on the vertices seen before the current epoch.
inline bool is_valid_knowledge_pair(std::span<const QueryRecord> records,
                                    const PartialColoring& revealed, const BRPair& pair) {
  if (!has_distinct_queries(records)) return false;
  for (const auto& r : records) {
    if (r.vertex >= pair.graph.vertex_count()) return false;
    const auto list = pair.graph.out(r.vertex);
    if (!std::equal(list.begin(), list.end(), r.answer.begin(), r.answer.end())) return false;
  }
  const auto epochs = decompose_epochs(records, pair.params.epoch_cap());
  const auto prior = knowledge_graph(records.first(epochs.current.begin));
  if (revealed.size() != prior.vertex_count()) return false;
  for (Vertex v : prior.vertices()) {
    auto it = revealed.find(v);
    if (it == revealed.end() || it->second != pair.coloring[v]) return false;
  }
  return true;
}

// Debug transcript: one "q <u> : <v1> ... <vk>" line per record, then at each
// epoch close "# epoch <n> closed: <surprise|timeout>" and, when a coloring is
// given, "# reveal <u>=<color> ..." for the vertices newly revealed.
inline void write_transcript(std::ostream& os, std::span<const QueryRecord> records,
                             std::size_t epoch_cap, const Coloring* coloring = nullptr) {
  std::optional<EpochDecomposition> epochs;
  if (epoch_cap > 0) epochs = decompose_epochs(records, epoch_cap);
  std::unordered_set<Vertex> revealed;
  std::vector<Vertex> pending;
  auto see = [&](Vertex v) {
    if (!revealed.count(v) &&
        std::find(pending.begin(), pending.end(), v) == pending.end())
      pending.push_back(v);
  };
  std::size_t next_closed = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    os << "q " << r.vertex << " :";
    for (Vertex v : r.answer) os << ' ' << v;
    os << '\n';
    see(r.vertex);
    for (Vertex v : r.answer) see(v);
    if (epochs && next_closed < epochs->closed.size() && epochs->closed[next_closed].end == i + 1) {
      const auto& e = epochs->closed[next_closed++];
      os << "# epoch " << next_closed << " closed: "
         << (*e.reason == EpochEnd::Surprise ? "surprise" : "timeout") << '\n';
      if (coloring && !pending.empty()) {
        os << "# reveal";
        for (Vertex v : pending) os << ' ' << v << '=' << (*coloring)[v].to_string();
        os << '\n';
        revealed.insert(pending.begin(), pending.end());
        pending.clear();
      }
    }
  }
}

// Reads the record lines of a transcript; comment lines are skipped.
inline QueryHistory read_transcript(std::istream& is) {
  QueryHistory out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string tag, colon;
    long long u = -1;
    if (!(ss >> tag >> u >> colon) || tag != "q" || colon != ":" || u < 0)
      throw ParseError(lineno, "expected 'q <u> : <answer>'");
    QueryRecord r{static_cast<Vertex>(u), {}};
    long long v;
    while (ss >> v) {
      if (v < 0) throw ParseError(lineno, "negative vertex id");
      r.answer.push_back(static_cast<Vertex>(v));
    }
    if (!ss.eof()) throw ParseError(lineno, "bad answer entry");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace brcycle
