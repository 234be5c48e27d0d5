#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "brcycle/digraph.hpp"
#include "brcycle/error.hpp"
#include "brcycle/rng.hpp"

namespace brcycle {

// Layered instance shape: N blue vertices plus L red layers of width W, all
// nonempty lists of length d. Total vertex count is N + L*W = 3N.
struct BRParams {
  std::size_t n_blue = 0;
  std::size_t layers = 0;
  std::size_t width = 0;
  std::size_t outdeg = 0;

  std::size_t vertex_count() const { return n_blue + layers * width; }
  std::size_t epoch_cap() const { return layers / 2; }
  bool operator==(const BRParams&) const = default;
};

inline void validate_params(const BRParams& p) {
  auto fail = [](const std::string& msg) { throw Error(Errc::InvalidParams, msg); };
  if (p.n_blue < 1 || p.layers < 2 || p.width < 1) fail("N, L and W must be positive, L >= 2");
  if (p.layers % 2 != 0) fail("L must be even");
  if (p.layers * p.width != 2 * p.n_blue) fail("L*W must equal 2N");
  if (p.outdeg < 2 || p.outdeg > p.width) fail("d must satisfy 2 <= d <= W");
  if (p.outdeg > 2 * p.n_blue - 1) fail("d must not exceed 2N-1");
}

inline BRParams make_params(std::size_t n_blue, std::size_t layers, std::size_t width,
                            std::size_t outdeg) {
  BRParams p{n_blue, layers, width, outdeg};
  validate_params(p);
  return p;
}

// L is the even divisor of 2N closest to (2N)^(2/9), searched outward from the
// rounded target (smaller candidate first on ties) and kept within a factor 4.
inline BRParams paper_params(std::size_t n_blue, std::size_t outdeg = 2) {
  if (n_blue < 4) throw Error(Errc::InvalidParams, "paper_params needs N >= 4");
  const std::size_t two_n = 2 * n_blue;
  const double target = std::pow(static_cast<double>(two_n), 2.0 / 9.0);
  const auto rounded = static_cast<long long>(std::llround(target));
  const double lo = target / 4.0, hi = target * 4.0;
  auto usable = [&](long long l) {
    if (l < 2 || l % 2 != 0) return false;
    const auto lu = static_cast<std::size_t>(l);
    if (static_cast<double>(l) < lo || static_cast<double>(l) > hi) return false;
    return two_n % lu == 0 && two_n / lu >= 2;
  };
  for (long long delta = 0;; ++delta) {
    const long long down = rounded - delta, up = rounded + delta;
    if (static_cast<double>(down) < lo && static_cast<double>(up) > hi) break;
    for (long long cand : {down, up}) {
      if (usable(cand)) {
        const auto layers = static_cast<std::size_t>(cand);
        return make_params(n_blue, layers, two_n / layers, outdeg);
      }
    }
  }
  throw Error(Errc::NoValidLayering,
              "no even divisor of " + std::to_string(two_n) + " near " + std::to_string(target));
}

// Every valid layer count for N (even divisors L of 2N with W = 2N/L >= d).
inline std::vector<std::size_t> valid_layer_counts(std::size_t n_blue, std::size_t outdeg = 2) {
  std::vector<std::size_t> out;
  for (std::size_t l = 2; l <= 2 * n_blue; l += 2)
    if ((2 * n_blue) % l == 0 && (2 * n_blue) / l >= outdeg) out.push_back(l);
  return out;
}

struct BRPair {
  BRParams params;
  Coloring coloring;
  Digraph graph;
  bool operator==(const BRPair&) const = default;
};

// Uniform over colorings with exactly N blue and W vertices per red layer.
inline Coloring gen_coloring(const BRParams& p, Rng& rng) {
  validate_params(p);
  std::vector<Color> colors;
  colors.reserve(p.vertex_count());
  colors.insert(colors.end(), p.n_blue, Color::blue());
  for (std::size_t i = 1; i <= p.layers; ++i)
    colors.insert(colors.end(), p.width, Color::red(static_cast<std::uint16_t>(i)));
  rng.shuffle(std::span<Color>(colors));
  return Coloring(std::move(colors));
}

// RNG consumption: blue lists in vertex order, then red lists layer by layer,
// vertices within a layer in increasing id order.
inline Digraph gen_br_graph(const Coloring& coloring, const BRParams& p, Rng& rng) {
  validate_params(p);
  const std::size_t nv = p.vertex_count();
  if (coloring.size() != nv)
    throw Error(Errc::InvalidParams, "coloring size does not match params");

  std::vector<std::vector<Vertex>> layer_members(p.layers + 1);
  std::vector<Vertex> upper;  // B together with R_1..R_{L/2}, increasing ids
  std::vector<std::size_t> upper_pos(nv, SIZE_MAX);
  for (Vertex v = 0; v < nv; ++v) {
    const Color c = coloring[v];
    if (c.layer() > p.layers) throw Error(Errc::InvalidParams, "color layer out of range");
    layer_members[c.layer()].push_back(v);
    if (c.is_blue() || c.layer() <= p.layers / 2) {
      upper_pos[v] = upper.size();
      upper.push_back(v);
    }
  }
  if (layer_members[0].size() != p.n_blue)
    throw Error(Errc::InvalidParams, "coloring has wrong number of blue vertices");
  for (std::size_t i = 1; i <= p.layers; ++i)
    if (layer_members[i].size() != p.width)
      throw Error(Errc::InvalidParams, "coloring has wrong width for layer " + std::to_string(i));

  const std::size_t pool = upper.size() - 1;  // 2N - 1
  if (p.outdeg > pool || p.outdeg > p.width)
    throw Error(Errc::InfeasibleSampling, "d exceeds the sampling pool");

  std::vector<std::vector<Vertex>> lists(nv);
  for (Vertex u : layer_members[0]) {
    const std::size_t self = upper_pos[u];
    for (auto idx : sample_without_replacement(pool, p.outdeg, rng))
      lists[u].push_back(upper[idx >= self ? idx + 1 : idx]);
  }
  for (std::size_t i = 1; i < p.layers; ++i) {
    const auto& next = layer_members[i + 1];
    for (Vertex u : layer_members[i])
      for (auto idx : sample_without_replacement(next.size(), p.outdeg, rng))
        lists[u].push_back(next[idx]);
  }
  return Digraph(lists);
}

inline BRPair gen_br_pair(const BRParams& p, Rng& rng) {
  Coloring coloring = gen_coloring(p, rng);
  Digraph graph = gen_br_graph(coloring, p, rng);
  return BRPair{p, std::move(coloring), std::move(graph)};
}

// Union of d uniform perfect matchings S1->S2 and d matchings S2->S1 over a
// random equal split. List slot k of a vertex comes from its side's k-th
// matching, so two matchings may repeat a neighbor.
inline Digraph gen_br_simple(std::size_t n, std::size_t d, Rng& rng) {
  if (n % 2 != 0 || n == 0) throw Error(Errc::OddVertexCount, "BR_simple needs a positive even n");
  if (d < 1) throw Error(Errc::InvalidParams, "BR_simple needs d >= 1");
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  rng.shuffle(std::span<Vertex>(perm));
  const std::size_t half = n / 2;
  std::vector<Vertex> s1(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<Vertex> s2(perm.begin() + static_cast<std::ptrdiff_t>(half), perm.end());

  std::vector<std::vector<Vertex>> lists(n);
  auto add_matchings = [&](const std::vector<Vertex>& from, const std::vector<Vertex>& to) {
    std::vector<Vertex> target(to);
    for (std::size_t k = 0; k < d; ++k) {
      rng.shuffle(std::span<Vertex>(target));
      for (std::size_t j = 0; j < half; ++j) lists[from[j]].push_back(target[j]);
    }
  };
  add_matchings(s1, s2);
  add_matchings(s2, s1);
  return Digraph(lists);
}

struct Violation {
  enum class Kind { ColoringSize, ClassSize, Outdegree, DuplicateNeighbor, EdgeRule, NonRedLSink };
  Kind kind;
  Vertex u = 0;
  std::optional<Vertex> v;
  std::string message;
};

// Checks the structural rules of a layered pair. Empty result means valid.
inline std::vector<Violation> validate_br(const BRPair& pair) {
  std::vector<Violation> out;
  const auto& p = pair.params;
  const auto& g = pair.graph;
  const auto& c = pair.coloring;
  const std::size_t nv = p.vertex_count();
  using K = Violation::Kind;
  if (c.size() != nv || g.vertex_count() != nv) {
    out.push_back({K::ColoringSize, 0, std::nullopt, "vertex count mismatch"});
    return out;
  }
  std::vector<std::size_t> counts(p.layers + 1, 0);
  for (Vertex v = 0; v < nv; ++v) {
    if (c[v].layer() > p.layers) {
      out.push_back({K::ClassSize, v, std::nullopt, "layer beyond L at " + std::to_string(v)});
      continue;
    }
    ++counts[c[v].layer()];
  }
  if (counts[0] != p.n_blue)
    out.push_back({K::ClassSize, 0, std::nullopt,
                   "blue class has " + std::to_string(counts[0]) + " vertices"});
  for (std::size_t i = 1; i <= p.layers; ++i)
    if (counts[i] != p.width)
      out.push_back({K::ClassSize, 0, std::nullopt,
                     "layer " + std::to_string(i) + " has " + std::to_string(counts[i]) +
                         " vertices"});

  const auto half = p.layers / 2;
  for (Vertex u = 0; u < nv; ++u) {
    const auto list = g.out(u);
    const Color cu = c[u];
    if (list.empty()) {
      if (!cu.is_red(p.layers))
        out.push_back({K::NonRedLSink, u, std::nullopt,
                       "non-red_L sink " + std::to_string(u) + " (" + cu.to_string() + ")"});
      continue;
    }
    if (list.size() != p.outdeg)
      out.push_back({K::Outdegree, u, std::nullopt,
                     "vertex " + std::to_string(u) + " has outdegree " +
                         std::to_string(list.size())});
    for (std::size_t a = 0; a < list.size(); ++a)
      for (std::size_t b = a + 1; b < list.size(); ++b)
        if (list[a] == list[b])
          out.push_back({K::DuplicateNeighbor, u, list[a],
                         "duplicate neighbor " + std::to_string(list[a]) + " of " +
                             std::to_string(u)});
    for (Vertex v : list) {
      const Color cv = c[v];
      bool ok;
      if (cu.is_blue())
        ok = cv.is_blue() || cv.layer() <= half;
      else
        ok = cu.layer() < p.layers && cv.is_red(cu.layer() + 1u);
      if (!ok)
        out.push_back({K::EdgeRule, u, v,
                       "edge " + std::to_string(u) + "(" + cu.to_string() + ") -> " +
                           std::to_string(v) + "(" + cv.to_string() + ")"});
    }
  }
  return out;
}

}  // namespace brcycle
