#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "brcycle/digraph.hpp"
#include "brcycle/error.hpp"
#include "brcycle/knowledge.hpp"
#include "brcycle/rng.hpp"

namespace brcycle {

struct FasResult {
  std::size_t min_fas = 0;
  std::vector<Vertex> witness_ordering;
  double epsilon = 0.0;  // min_fas / (d * V)
};

inline constexpr std::size_t kFasExactMaxVertices = 22;
inline constexpr std::size_t kFasBruteforceMaxVertices = 9;

// Edges (u, v) with v placed before u.
inline std::size_t backedge_count(const Digraph& g, std::span<const Vertex> ordering) {
  const std::size_t nv = g.vertex_count();
  if (ordering.size() != nv) throw Error(Errc::InvalidParams, "ordering must cover every vertex");
  std::vector<std::size_t> pos(nv, nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (ordering[i] >= nv || pos[ordering[i]] != nv)
      throw Error(Errc::InvalidParams, "ordering is not a permutation");
    pos[ordering[i]] = i;
  }
  std::size_t back = 0;
  for (Vertex u = 0; u < nv; ++u)
    for (Vertex v : g.out(u))
      if (pos[v] < pos[u]) ++back;
  return back;
}

// Edges from the later half of the ordering into the earlier half. Each one
// is a backedge of the ordering.
inline std::size_t induced_partition_cross(const Digraph& g, std::span<const Vertex> ordering) {
  const std::size_t nv = g.vertex_count();
  if (ordering.size() != nv) throw Error(Errc::InvalidParams, "ordering must cover every vertex");
  std::vector<char> early(nv, 0);
  for (std::size_t i = 0; i < nv / 2; ++i) early.at(ordering[i]) = 1;
  std::size_t cross = 0;
  for (std::size_t i = nv / 2; i < nv; ++i)
    for (Vertex v : g.out(ordering[i]))
      if (early[v]) ++cross;
  return cross;
}

namespace detail {

inline double fas_epsilon(const Digraph& g, std::size_t fas) {
  const double denom = static_cast<double>(g.outdegree_bound()) * static_cast<double>(g.vertex_count());
  return denom > 0 ? static_cast<double>(fas) / denom : 0.0;
}

}  // namespace detail

// Subset dynamic program: dp[S] is the fewest backedges over orderings of S,
// taking the minimum over the vertex placed last.
inline FasResult min_fas_exact(const Digraph& g) {
  const std::size_t nv = g.vertex_count();
  if (nv > kFasExactMaxVertices)
    throw Error(Errc::TooLarge, "exact FAS is limited to " + std::to_string(kFasExactMaxVertices) +
                                    " vertices, got " + std::to_string(nv));
  FasResult res;
  if (nv == 0) return res;

  // layers[v][k] holds the targets reached by at least k+1 parallel edges.
  std::vector<std::vector<std::uint32_t>> layers(nv);
  for (Vertex u = 0; u < nv; ++u) {
    std::vector<std::uint32_t> mult(nv, 0);
    for (Vertex v : g.out(u)) {
      const std::uint32_t k = mult[v]++;
      if (layers[u].size() <= k) layers[u].push_back(0);
      layers[u][k] |= std::uint32_t{1} << v;
    }
  }

  const std::size_t states = std::size_t{1} << nv;
  std::vector<std::uint16_t> dp(states, std::numeric_limits<std::uint16_t>::max());
  std::vector<std::uint8_t> last(states, 0);
  dp[0] = 0;
  for (std::size_t s = 1; s < states; ++s) {
    auto rest_bits = static_cast<std::uint32_t>(s);
    while (rest_bits) {
      const int v = std::countr_zero(rest_bits);
      rest_bits &= rest_bits - 1;
      const auto without = static_cast<std::uint32_t>(s) & ~(std::uint32_t{1} << v);
      unsigned cost = dp[without];
      for (std::uint32_t mask : layers[static_cast<std::size_t>(v)]) cost += std::popcount(mask & without);
      if (cost < dp[s]) {
        dp[s] = static_cast<std::uint16_t>(cost);
        last[s] = static_cast<std::uint8_t>(v);
      }
    }
  }

  res.min_fas = dp[states - 1];
  res.witness_ordering.resize(nv);
  std::size_t s = states - 1;
  for (std::size_t i = nv; i-- > 0;) {
    res.witness_ordering[i] = last[s];
    s &= ~(std::size_t{1} << last[s]);
  }
  res.epsilon = detail::fas_epsilon(g, res.min_fas);
  return res;
}

inline FasResult min_fas_bruteforce(const Digraph& g) {
  const std::size_t nv = g.vertex_count();
  if (nv > kFasBruteforceMaxVertices)
    throw Error(Errc::TooLarge, "brute-force FAS is limited to " +
                                    std::to_string(kFasBruteforceMaxVertices) + " vertices");
  std::vector<Vertex> perm(nv);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  FasResult res;
  res.min_fas = std::numeric_limits<std::size_t>::max();
  do {
    const std::size_t b = backedge_count(g, perm);
    if (b < res.min_fas) {
      res.min_fas = b;
      res.witness_ordering = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (nv == 0) res.min_fas = 0;
  res.epsilon = detail::fas_epsilon(g, res.min_fas);
  return res;
}

// Sinks go last, sources first, otherwise the vertex with the largest
// out-minus-in degree among the remaining ones. An upper bound only.
inline std::vector<Vertex> greedy_fas_ordering(const Digraph& g) {
  const std::size_t nv = g.vertex_count();
  std::vector<std::vector<Vertex>> preds(nv);
  std::vector<long long> outd(nv, 0), ind(nv, 0);
  for (Vertex u = 0; u < nv; ++u)
    for (Vertex v : g.out(u)) {
      preds[v].push_back(u);
      ++outd[u];
      ++ind[v];
    }
  std::vector<char> gone(nv, 0);
  std::vector<Vertex> front, back;
  auto remove = [&](Vertex x) {
    gone[x] = 1;
    for (Vertex v : g.out(x)) --ind[v];
    for (Vertex p : preds[x]) --outd[p];
  };
  for (std::size_t left = nv; left > 0; --left) {
    std::optional<Vertex> pick;
    for (Vertex v = 0; v < nv && !pick; ++v)
      if (!gone[v] && outd[v] == 0) {
        back.push_back(v);
        pick = v;
      }
    for (Vertex v = 0; v < nv && !pick; ++v)
      if (!gone[v] && ind[v] == 0) {
        front.push_back(v);
        pick = v;
      }
    if (!pick) {
      Vertex best = 0;
      long long best_delta = std::numeric_limits<long long>::min();
      for (Vertex v = 0; v < nv; ++v)
        if (!gone[v] && outd[v] - ind[v] > best_delta) {
          best_delta = outd[v] - ind[v];
          best = v;
        }
      front.push_back(best);
      pick = best;
    }
    remove(*pick);
  }
  front.insert(front.end(), back.rbegin(), back.rend());
  return front;
}

// Minimum over random balanced partitions (V1, V2) of the number of V1 -> V2
// edges. The sampled minimum upper-bounds the true one.
inline std::size_t partition_cross_min(const Digraph& g, std::size_t num_samples, Rng& rng) {
  const std::size_t nv = g.vertex_count();
  if (nv % 2 != 0) throw Error(Errc::OddVertexCount, "balanced partitions need an even vertex count");
  if (num_samples == 0) throw Error(Errc::InvalidParams, "num_samples must be positive");
  std::vector<Vertex> perm(nv);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::vector<char> in_v1(nv);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t s = 0; s < num_samples; ++s) {
    rng.shuffle(std::span<Vertex>(perm));
    std::fill(in_v1.begin(), in_v1.end(), 0);
    for (std::size_t i = 0; i < nv / 2; ++i) in_v1[perm[i]] = 1;
    std::size_t cross = 0;
    for (std::size_t i = 0; i < nv / 2; ++i)
      for (Vertex v : g.out(perm[i]))
        if (!in_v1[v]) ++cross;
    best = std::min(best, cross);
  }
  return best;
}

// Vertices other than u with a directed path to u.
inline std::size_t ancestor_count(const KnowledgeGraph& kg, Vertex u) {
  if (!kg.contains(u)) return 0;
  std::unordered_set<Vertex> seen{u};
  std::deque<Vertex> queue{u};
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    for (Vertex p : kg.predecessors(x))
      if (seen.insert(p).second) queue.push_back(p);
  }
  return seen.size() - 1;
}

inline constexpr std::uint64_t kLongestPathSearchCap = 2'000'000;

// Longest all-blue directed path, in edges. Acyclic blue subgraphs use a DAG
// longest-path pass; otherwise a depth-first search over simple paths runs
// until kLongestPathSearchCap expansions, so the result is a lower bound.
template <class ColorOf>
std::size_t max_blue_path_by(const KnowledgeGraph& kg, ColorOf&& color_of) {
  std::vector<Vertex> blue;
  std::unordered_map<Vertex, std::size_t> idx;
  for (Vertex v : kg.vertices())
    if (color_of(v).is_blue()) {
      idx.emplace(v, blue.size());
      blue.push_back(v);
    }
  const std::size_t n = blue.size();
  if (n == 0) return 0;
  std::vector<std::vector<std::size_t>> adj(n);
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (Vertex w : kg.successors(blue[i])) {
      auto it = idx.find(w);
      if (it == idx.end() || it->second == i) continue;
      adj[i].push_back(it->second);
      ++indeg[it->second];
    }

  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) order.push_back(i);
  for (std::size_t k = 0; k < order.size(); ++k)
    for (std::size_t j : adj[order[k]])
      if (--indeg[j] == 0) order.push_back(j);

  if (order.size() == n) {
    std::vector<std::size_t> best(n, 0);
    std::size_t ans = 0;
    for (std::size_t k = n; k-- > 0;) {
      const std::size_t i = order[k];
      for (std::size_t j : adj[i]) best[i] = std::max(best[i], best[j] + 1);
      ans = std::max(ans, best[i]);
    }
    return ans;
  }

  std::vector<char> on_path(n, 0);
  std::uint64_t expansions = 0;
  std::size_t ans = 0;
  auto dfs = [&](auto&& self, std::size_t i, std::size_t len) -> void {
    ans = std::max(ans, len);
    if (++expansions > kLongestPathSearchCap) return;
    on_path[i] = 1;
    for (std::size_t j : adj[i])
      if (!on_path[j]) self(self, j, len + 1);
    on_path[i] = 0;
  };
  for (std::size_t i = 0; i < n && expansions <= kLongestPathSearchCap; ++i) dfs(dfs, i, 0);
  return ans;
}

inline std::size_t max_blue_path(const KnowledgeGraph& kg, const Coloring& coloring) {
  return max_blue_path_by(kg, [&](Vertex v) { return coloring[v]; });
}

inline std::size_t max_blue_path(const KnowledgeGraph& kg, const PartialColoring& coloring) {
  return max_blue_path_by(kg, [&](Vertex v) {
    auto it = coloring.find(v);
    return it == coloring.end() ? Color::red(1) : it->second;
  });
}

struct EpochStats {
  std::size_t num_epochs = 0;
  std::size_t num_surprise = 0;
  std::size_t num_blue_surprise = 0;
  std::vector<std::size_t> max_blue_path_per_epoch;
  std::size_t max_ancestors_blue = 0;

  std::size_t max_blue_path() const {
    return max_blue_path_per_epoch.empty()
               ? 0
               : *std::max_element(max_blue_path_per_epoch.begin(), max_blue_path_per_epoch.end());
  }
};

// Per-epoch blue paths are measured on the surprise-free part of each epoch,
// which leaves out the closing surprise record.
inline EpochStats epoch_stats(std::span<const QueryRecord> history, const Coloring& coloring,
                              std::size_t epoch_cap) {
  EpochStats st;
  const auto dec = decompose_epochs(history, epoch_cap);
  auto add_epoch = [&](const Epoch& e) {
    ++st.num_epochs;
    std::size_t end = e.end;
    if (e.reason == EpochEnd::Surprise) {
      ++st.num_surprise;
      if (coloring[history[e.end - 1].vertex].is_blue()) ++st.num_blue_surprise;
      --end;
    }
    const auto kg = knowledge_graph(history.subspan(e.begin, end - e.begin));
    st.max_blue_path_per_epoch.push_back(max_blue_path(kg, coloring));
  };
  for (const auto& e : dec.closed) add_epoch(e);
  if (dec.current.size() > 0) add_epoch(dec.current);

  const auto kg = knowledge_graph(history);
  for (Vertex v : kg.vertices())
    if (coloring[v].is_blue()) st.max_ancestors_blue = std::max(st.max_ancestors_blue, ancestor_count(kg, v));
  return st;
}

}  // namespace brcycle
