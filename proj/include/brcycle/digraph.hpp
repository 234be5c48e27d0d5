#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "brcycle/error.hpp"

namespace brcycle {

using Vertex = std::uint32_t;

// Blue, or red in layer 1..L. Layer 0 encodes blue.
class Color {
 public:
  constexpr Color() = default;
  static constexpr Color blue() { return Color(0); }
  static constexpr Color red(std::uint16_t layer) { return Color(layer); }

  constexpr bool is_blue() const { return layer_ == 0; }
  constexpr bool is_red() const { return layer_ != 0; }
  constexpr bool is_red(std::size_t layer) const { return layer_ != 0 && layer_ == layer; }
  constexpr std::uint16_t layer() const { return layer_; }

  constexpr auto operator<=>(const Color&) const = default;

  std::string to_string() const { return is_blue() ? "b" : "r" + std::to_string(layer_); }

 private:
  constexpr explicit Color(std::uint16_t layer) : layer_(layer) {}
  std::uint16_t layer_ = 0;
};

// Colors known for a subset of the vertices.
using PartialColoring = std::map<Vertex, Color>;

class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(std::vector<Color> colors) : colors_(std::move(colors)) {}

  std::size_t size() const { return colors_.size(); }
  Color operator[](Vertex v) const { return colors_.at(v); }
  std::span<const Color> colors() const { return colors_; }

  // Vertices of the given color in increasing id order.
  std::vector<Vertex> members(Color c) const {
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < colors_.size(); ++v)
      if (colors_[v] == c) out.push_back(static_cast<Vertex>(v));
    return out;
  }

  bool operator==(const Coloring&) const = default;

 private:
  std::vector<Color> colors_;
};

// Immutable ordered adjacency lists over 0..V-1, stored CSR-style. Every
// nonempty out-list has the same length d; lists carry no self-loops. Repeated
// entries within a list are allowed (union-of-matchings graphs produce them).
class Digraph {
 public:
  Digraph() : offsets_{0} {}

  explicit Digraph(const std::vector<std::vector<Vertex>>& lists) {
    offsets_.reserve(lists.size() + 1);
    offsets_.push_back(0);
    for (std::size_t u = 0; u < lists.size(); ++u) {
      const auto& list = lists[u];
      if (!list.empty()) {
        if (outdeg_ == 0) outdeg_ = list.size();
        if (list.size() != outdeg_)
          throw Error(Errc::InvalidParams, "vertex " + std::to_string(u) + " has outdegree " +
                                               std::to_string(list.size()) + ", expected 0 or " +
                                               std::to_string(outdeg_));
      }
      for (Vertex v : list) {
        if (v >= lists.size())
          throw Error(Errc::VertexOutOfRange, "edge target " + std::to_string(v) + " out of range");
        if (v == u) throw Error(Errc::InvalidParams, "self-loop at " + std::to_string(u));
        targets_.push_back(v);
      }
      offsets_.push_back(targets_.size());
    }
  }

  std::size_t vertex_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size(); }
  // Common length of the nonempty lists (0 for an edgeless graph).
  std::size_t outdegree_bound() const { return outdeg_; }

  std::span<const Vertex> out(Vertex u) const {
    return std::span<const Vertex>(targets_).subspan(offsets_[u], offsets_[u + 1] - offsets_[u]);
  }
  std::size_t outdegree(Vertex u) const { return offsets_[u + 1] - offsets_[u]; }

  bool has_edge(Vertex u, Vertex v) const {
    auto o = out(u);
    return std::find(o.begin(), o.end(), v) != o.end();
  }

  std::vector<std::vector<Vertex>> lists() const {
    std::vector<std::vector<Vertex>> out_lists(vertex_count());
    for (Vertex u = 0; u < vertex_count(); ++u) {
      auto o = out(u);
      out_lists[u].assign(o.begin(), o.end());
    }
    return out_lists;
  }

  bool operator==(const Digraph&) const = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::size_t outdeg_ = 0;
};

}  // namespace brcycle
