#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "brcycle/digraph.hpp"
#include "brcycle/error.hpp"
#include "brcycle/graph_core.hpp"
#include "brcycle/knowledge.hpp"
#include "brcycle/rng.hpp"

namespace brcycle {

enum class TreeKind { Type1, Type2, Type3, Type4 };

inline const char* to_string(TreeKind k) {
  switch (k) {
    case TreeKind::Type1: return "type1";
    case TreeKind::Type2: return "type2";
    case TreeKind::Type3: return "type3";
    case TreeKind::Type4: return "type4";
  }
  return "?";
}

// One out-tree of the current epoch's knowledge graph.
struct TreeType {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Vertex root = 0;
  TreeKind kind = TreeKind::Type4;
  std::size_t height = 0;
  std::vector<Vertex> members;      // breadth-first, root first
  std::vector<std::size_t> parent;  // index into members; npos for the root
  std::vector<std::size_t> depth;
  std::optional<Color> root_color;  // set for types 1, 2 and 3
};

// Records before the current epoch, and the current epoch itself.
struct KnowledgeSplit {
  std::span<const QueryRecord> prior;
  std::span<const QueryRecord> current;
};

inline KnowledgeSplit split_current_epoch(std::span<const QueryRecord> history, std::size_t epoch_cap) {
  const auto dec = decompose_epochs(history, epoch_cap);
  return {history.first(dec.current.begin), history.subspan(dec.current.begin)};
}

inline std::vector<TreeType> classify_trees(const KnowledgeGraph& epoch_kg,
                                            const std::unordered_set<Vertex>& prior_vkg,
                                            const PartialColoring& revealed, std::size_t layers) {
  for (Vertex v : epoch_kg.vertices())
    if (epoch_kg.predecessors(v).size() > 1)
      throw Error(Errc::NotAForest, "vertex " + std::to_string(v) + " has several parents");

  std::vector<TreeType> trees;
  std::size_t covered = 0;
  for (Vertex r : epoch_kg.vertices()) {
    if (!epoch_kg.predecessors(r).empty()) continue;
    TreeType t;
    t.root = r;
    t.members.push_back(r);
    t.parent.push_back(TreeType::npos);
    t.depth.push_back(0);
    std::optional<std::size_t> sink_depth;
    for (std::size_t i = 0; i < t.members.size(); ++i) {
      const Vertex x = t.members[i];
      if (i > 0 && prior_vkg.count(x))
        throw Error(Errc::NotAForest, "non-root vertex " + std::to_string(x) + " was already known");
      if (epoch_kg.is_sink(x)) {
        if (sink_depth && *sink_depth != t.depth[i])
          throw Error(Errc::InvalidKnowledge, "sinks at different depths below root " + std::to_string(r));
        sink_depth = t.depth[i];
      }
      for (Vertex y : epoch_kg.successors(x)) {
        t.members.push_back(y);
        t.parent.push_back(i);
        t.depth.push_back(t.depth[i] + 1);
      }
    }
    t.height = *std::max_element(t.depth.begin(), t.depth.end());
    covered += t.members.size();

    if (prior_vkg.count(r)) {
      auto it = revealed.find(r);
      if (it == revealed.end())
        throw Error(Errc::InvalidKnowledge, "known root " + std::to_string(r) + " has no revealed color");
      t.root_color = it->second;
      if (it->second.is_blue()) {
        t.kind = TreeKind::Type2;
      } else {
        t.kind = TreeKind::Type1;
        if (it->second.layer() + t.height > layers)
          throw Error(Errc::InvalidKnowledge, "red root " + std::to_string(r) + " is too deep");
      }
    } else if (sink_depth) {
      t.kind = TreeKind::Type3;
      if (*sink_depth >= layers)
        throw Error(Errc::InvalidKnowledge, "sink too deep below root " + std::to_string(r));
      t.root_color = Color::red(static_cast<std::uint16_t>(layers - *sink_depth));
    } else {
      t.kind = TreeKind::Type4;
    }
    trees.push_back(std::move(t));
  }
  // Every vertex of a forest of out-trees is reached from exactly one root.
  if (covered != epoch_kg.vertex_count())
    throw Error(Errc::NotAForest, "knowledge graph of the epoch contains a cycle");
  return trees;
}

// Revealed colors plus every color fixed by a type 1 or type 3 tree.
inline PartialColoring forced_coloring(const std::vector<TreeType>& trees, const PartialColoring& revealed) {
  PartialColoring out = revealed;
  for (const auto& t : trees) {
    if (t.kind != TreeKind::Type1 && t.kind != TreeKind::Type3) continue;
    const auto base = t.root_color->layer();
    for (std::size_t i = 0; i < t.members.size(); ++i)
      out[t.members[i]] = Color::red(static_cast<std::uint16_t>(base + t.depth[i]));
  }
  return out;
}

// Trees, forced colors and the vertex set of the full knowledge graph for a
// history whose closed epochs have their colors revealed.
struct NaiveModel {
  std::vector<TreeType> trees;
  PartialColoring forced;
  std::vector<Vertex> vertices;
};

inline NaiveModel naive_model(std::span<const QueryRecord> history, const PartialColoring& revealed,
                              const BRParams& params) {
  const auto split = split_current_epoch(history, params.epoch_cap());
  const auto prior = knowledge_graph(split.prior);
  const std::unordered_set<Vertex> prior_vkg(prior.vertices().begin(), prior.vertices().end());
  NaiveModel m;
  m.trees = classify_trees(knowledge_graph(split.current), prior_vkg, revealed, params.layers);
  m.forced = forced_coloring(m.trees, revealed);
  const auto full = knowledge_graph(history);
  m.vertices.assign(full.vertices().begin(), full.vertices().end());
  return m;
}

inline PartialColoring sample_naive_coloring(const std::vector<TreeType>& trees, const PartialColoring& forced,
                                             const BRParams& params, Rng& rng) {
  const std::size_t n = params.n_blue, l = params.layers, w = params.width;
  PartialColoring out = forced;
  for (const auto& t : trees) {
    if (t.kind == TreeKind::Type1 || t.kind == TreeKind::Type3) continue;
    if (t.height >= l)
      throw Error(Errc::InvalidTreeHeight, "tree of height " + std::to_string(t.height) + " with L = " +
                                               std::to_string(l));
    std::vector<Color> c(t.members.size());
    if (t.kind == TreeKind::Type2) {
      c[0] = *t.root_color;
    } else {
      const std::uint64_t r = rng.below(3 * n - t.height * w);
      c[0] = r < n ? Color::blue() : Color::red(static_cast<std::uint16_t>(1 + (r - n) / w));
    }
    for (std::size_t i = 1; i < t.members.size(); ++i) {
      const Color p = c[t.parent[i]];
      if (p.is_blue()) {
        const std::uint64_t r = rng.below(2 * l);
        c[i] = r < l ? Color::blue() : Color::red(static_cast<std::uint16_t>(1 + (r - l) / 2));
      } else {
        if (p.layer() >= l) throw Error(Errc::InvalidTreeHeight, "red chain runs past layer L");
        c[i] = Color::red(static_cast<std::uint16_t>(p.layer() + 1));
      }
    }
    for (std::size_t i = 0; i < t.members.size(); ++i) out[t.members[i]] = c[i];
  }
  return out;
}

// Probability that sample_naive_coloring returns exactly s.
inline double naive_probability(const std::vector<TreeType>& trees, const PartialColoring& forced,
                                const BRParams& params, const PartialColoring& s) {
  const double n = static_cast<double>(params.n_blue), l = static_cast<double>(params.layers),
               w = static_cast<double>(params.width);
  for (const auto& [v, c] : forced) {
    auto it = s.find(v);
    if (it == s.end() || it->second != c) return 0.0;
  }
  double p = 1.0;
  for (const auto& t : trees) {
    if (t.kind == TreeKind::Type1 || t.kind == TreeKind::Type3) continue;
    std::vector<Color> c(t.members.size());
    for (std::size_t i = 0; i < t.members.size(); ++i) {
      auto it = s.find(t.members[i]);
      if (it == s.end()) return 0.0;
      c[i] = it->second;
    }
    if (t.kind == TreeKind::Type4) {
      const double denom = 3 * n - static_cast<double>(t.height) * w;
      if (c[0].is_blue()) p *= n / denom;
      else if (c[0].layer() + t.height <= params.layers) p *= w / denom;
      else return 0.0;
    }
    for (std::size_t i = 1; i < t.members.size(); ++i) {
      const Color par = c[t.parent[i]];
      if (par.is_blue()) {
        if (c[i].is_blue()) p *= 0.5;
        else if (c[i].layer() <= params.layers / 2) p *= 1.0 / l;
        else return 0.0;
      } else if (c[i] != Color::red(static_cast<std::uint16_t>(par.layer() + 1))) {
        return 0.0;
      }
    }
  }
  std::set<Vertex> support;
  for (const auto& [v, c] : forced) support.insert(v);
  for (const auto& t : trees) support.insert(t.members.begin(), t.members.end());
  if (s.size() != support.size()) return 0.0;
  return p;
}

namespace detail {

inline bool edge_allowed(Color from, Color to, std::size_t layers) {
  if (from.is_blue()) return to.is_blue() || to.layer() <= layers / 2;
  return to.is_red() && to.layer() == from.layer() + 1;
}

}  // namespace detail

// Extends p, colors every vertex of kg, respects the layer rules on each
// edge, and colors every sink red_L.
inline bool is_good_partial_coloring(const KnowledgeGraph& kg, const PartialColoring& s,
                                     const PartialColoring& p, std::size_t layers) {
  for (const auto& [v, c] : p) {
    auto it = s.find(v);
    if (it == s.end() || it->second != c) return false;
  }
  for (Vertex v : kg.vertices()) {
    auto it = s.find(v);
    if (it == s.end() || it->second.layer() > layers) return false;
    if (kg.is_sink(v) && it->second != Color::red(static_cast<std::uint16_t>(layers))) return false;
    for (Vertex x : kg.successors(v)) {
      auto jt = s.find(x);
      if (jt == s.end() || !detail::edge_allowed(it->second, jt->second, layers)) return false;
    }
  }
  return true;
}

inline constexpr std::size_t kEnumerateMaxVertices = 12;
inline constexpr std::size_t kEnumerateMaxOutdeg = 2;

// Exact conditional law of the colors of the knowledge graph's vertices given
// the history and the revealed colors. Each full coloring is weighted by the
// chance a uniform coloring extends it times the chance the graph reproduces
// every recorded answer; the second factor is a closed-form product over the
// queried vertices.
inline std::map<PartialColoring, double> enumerate_conditional_colorings(std::span<const QueryRecord> history,
                                                                         const PartialColoring& revealed,
                                                                         const BRParams& params) {
  validate_params(params);
  if (params.vertex_count() > kEnumerateMaxVertices || params.outdeg > kEnumerateMaxOutdeg)
    throw Error(Errc::TooLarge, "exact enumeration needs V <= 12 and d <= 2");
  if (!has_distinct_queries(history)) throw Error(Errc::InvalidKnowledge, "history repeats a query");

  const std::size_t l = params.layers, d = params.outdeg;
  const auto kg = knowledge_graph(history);
  const std::vector<Vertex> verts(kg.vertices().begin(), kg.vertices().end());
  const std::size_t k = verts.size();
  const std::size_t nv = params.vertex_count();

  auto falling = [](double x, std::size_t m) {
    double r = 1.0;
    for (std::size_t i = 0; i < m; ++i) r *= x - static_cast<double>(i);
    return r;
  };
  const double blue_list = 1.0 / falling(static_cast<double>(2 * params.n_blue - 1), d);
  const double red_list = 1.0 / falling(static_cast<double>(params.width), d);

  std::unordered_map<Vertex, std::size_t> pos;
  for (std::size_t i = 0; i < k; ++i) pos.emplace(verts[i], i);
  std::vector<const QueryRecord*> record_of(k, nullptr);
  for (const auto& r : history) record_of[pos.at(r.vertex)] = &r;

  std::vector<std::size_t> remaining(l + 1, params.width);
  remaining[0] = params.n_blue;
  std::vector<Color> assign(k);

  // Weight of the answer at position i once it and its entries are colored.
  auto list_factor = [&](std::size_t i) -> double {
    const QueryRecord* r = record_of[i];
    if (!r) return 1.0;
    const Color c = assign[i];
    if (c.layer() == l) return r->answer.empty() ? 1.0 : 0.0;
    if (r->answer.size() != d) return 0.0;
    std::set<Vertex> distinct(r->answer.begin(), r->answer.end());
    if (distinct.size() != d || distinct.count(r->vertex)) return 0.0;
    return c.is_blue() ? blue_list : red_list;
  };

  std::map<PartialColoring, double> dist;
  double total = 0.0;
  auto recurse = [&](auto&& self, std::size_t i, double weight) -> void {
    if (i == k) {
      for (std::size_t j = 0; j < k && weight > 0; ++j) weight *= list_factor(j);
      if (weight <= 0) return;
      PartialColoring s;
      for (std::size_t j = 0; j < k; ++j) s.emplace(verts[j], assign[j]);
      dist[s] += weight;
      total += weight;
      return;
    }
    const Vertex v = verts[i];
    auto fixed = revealed.find(v);
    for (std::size_t c = 0; c <= l; ++c) {
      const Color col = c == 0 ? Color::blue() : Color::red(static_cast<std::uint16_t>(c));
      if (fixed != revealed.end() && fixed->second != col) continue;
      if (remaining[c] == 0) continue;
      if (kg.is_sink(v) && c != l) continue;
      assign[i] = col;
      bool ok = true;
      for (Vertex x : kg.successors(v)) {
        const std::size_t j = pos.at(x);
        if (j <= i && !detail::edge_allowed(col, assign[j], l)) ok = false;
      }
      for (Vertex x : kg.predecessors(v)) {
        const std::size_t j = pos.at(x);
        if (j < i && !detail::edge_allowed(assign[j], col, l)) ok = false;
      }
      if (!ok) continue;
      const double step = static_cast<double>(remaining[c]) / static_cast<double>(nv - i);
      --remaining[c];
      self(self, i + 1, weight * step);
      ++remaining[c];
    }
  };
  recurse(recurse, 0, 1.0);
  if (total <= 0) throw Error(Errc::InvalidKnowledge, "no coloring is consistent with the history");
  for (auto& [s, w] : dist) w /= total;
  return dist;
}

}  // namespace brcycle
