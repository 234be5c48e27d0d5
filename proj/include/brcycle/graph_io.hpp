#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "brcycle/digraph.hpp"
#include "brcycle/error.hpp"
#include "brcycle/graph_core.hpp"

namespace brcycle {

// A graph file holds either a layered pair (header "BR") or a bare digraph
// from the two-sided generator (header "BRS").
struct GraphFile {
  std::optional<BRPair> pair;
  Digraph graph;
  std::size_t outdeg = 0;

  bool is_pair() const { return pair.has_value(); }
};

namespace detail {

inline void write_adjacency(std::ostream& os, const Digraph& g) {
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    os << u << ':';
    for (Vertex v : g.out(u)) os << ' ' << v;
    os << '\n';
  }
}

}  // namespace detail

inline void save_graph(std::ostream& os, const BRPair& pair) {
  const auto& p = pair.params;
  os << "BR v=" << p.vertex_count() << " d=" << p.outdeg << " L=" << p.layers << " W=" << p.width
     << " N=" << p.n_blue << '\n';
  for (std::size_t v = 0; v < pair.coloring.size(); ++v)
    os << (v ? " " : "") << pair.coloring[static_cast<Vertex>(v)].to_string();
  os << '\n';
  detail::write_adjacency(os, pair.graph);
}

inline void save_graph(std::ostream& os, const Digraph& g, std::size_t d) {
  os << "BRS v=" << g.vertex_count() << " d=" << d << '\n';
  detail::write_adjacency(os, g);
}

namespace detail {

inline std::size_t parse_count(const std::string& text, std::size_t line, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line, "expected a count for " + what + ", got '" + text + "'");
  try {
    return static_cast<std::size_t>(std::stoull(text));
  } catch (const std::out_of_range&) {
    throw ParseError(line, what + " out of range");
  }
}

inline std::map<std::string, std::size_t> parse_header(std::istringstream& ss, std::size_t line) {
  std::map<std::string, std::size_t> fields;
  std::string tok;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError(line, "expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    if (!fields.emplace(key, parse_count(tok.substr(eq + 1), line, key)).second)
      throw ParseError(line, "duplicate header field " + key);
  }
  return fields;
}

inline Color parse_color(const std::string& tok, std::size_t line) {
  if (tok == "b") return Color::blue();
  if (tok.size() < 2 || tok[0] != 'r') throw ParseError(line, "bad color token '" + tok + "'");
  const std::size_t layer = parse_count(tok.substr(1), line, "layer");
  if (layer == 0 || layer > 0xFFFF) throw ParseError(line, "bad layer in '" + tok + "'");
  return Color::red(static_cast<std::uint16_t>(layer));
}

}  // namespace detail

inline GraphFile load_graph(std::istream& is) {
  std::string text;
  std::size_t line_no = 1;
  if (!std::getline(is, text)) throw ParseError(1, "empty input");

  std::istringstream header(text);
  std::string kind;
  header >> kind;
  if (kind != "BR" && kind != "BRS") throw ParseError(1, "header must start with BR or BRS");
  const auto fields = detail::parse_header(header, 1);
  auto field = [&](const char* key) {
    auto it = fields.find(key);
    if (it == fields.end()) throw ParseError(1, std::string("missing header field ") + key);
    return it->second;
  };
  const std::size_t nv = field("v"), d = field("d");
  const std::size_t expected_fields = kind == "BR" ? 5 : 2;
  if (fields.size() != expected_fields) throw ParseError(1, "unexpected header fields");

  GraphFile out;
  out.outdeg = d;
  std::optional<BRParams> params;
  std::optional<Coloring> coloring;
  if (kind == "BR") {
    BRParams p{field("N"), field("L"), field("W"), d};
    try {
      validate_params(p);
    } catch (const Error& e) {
      throw ParseError(1, e.what());
    }
    if (p.vertex_count() != nv) throw ParseError(1, "v does not equal N + L*W");
    params = p;

    ++line_no;
    if (!std::getline(is, text)) throw ParseError(line_no, "missing coloring line");
    std::istringstream ss(text);
    std::vector<Color> colors;
    std::string tok;
    while (ss >> tok) colors.push_back(detail::parse_color(tok, line_no));
    if (colors.size() != nv)
      throw ParseError(line_no, "expected " + std::to_string(nv) + " colors, got " + std::to_string(colors.size()));
    coloring = Coloring(std::move(colors));
  }

  std::vector<std::vector<Vertex>> lists(nv);
  for (std::size_t u = 0; u < nv; ++u) {
    ++line_no;
    if (!std::getline(is, text)) throw ParseError(line_no, "missing adjacency line for vertex " + std::to_string(u));
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError(line_no, "expected 'u: v1 v2 ...'");
    if (detail::parse_count(text.substr(0, colon), line_no, "vertex") != u)
      throw ParseError(line_no, "expected vertex " + std::to_string(u));
    std::istringstream ss(text.substr(colon + 1));
    std::string tok;
    while (ss >> tok) {
      const std::size_t v = detail::parse_count(tok, line_no, "neighbor");
      if (v >= nv) throw ParseError(line_no, "neighbor " + tok + " out of range");
      lists[u].push_back(static_cast<Vertex>(v));
    }
    const bool sink_ok = kind == "BR";
    if (lists[u].size() != d && !(sink_ok && lists[u].empty()))
      throw ParseError(line_no, "vertex " + std::to_string(u) + " has " + std::to_string(lists[u].size()) +
                                    " neighbors, expected " + std::to_string(d));
  }
  while (std::getline(is, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") != std::string::npos) throw ParseError(line_no, "trailing content");
  }

  try {
    out.graph = Digraph(lists);
  } catch (const Error& e) {
    throw ParseError(line_no, e.what());
  }
  if (params) out.pair = BRPair{*params, std::move(*coloring), out.graph};
  return out;
}

inline void save_graph_file(const std::string& path, const GraphFile& file) {
  std::ofstream os(path);
  if (!os) throw Error(Errc::InvalidParams, "cannot open " + path + " for writing");
  if (file.pair) save_graph(os, *file.pair);
  else save_graph(os, file.graph, file.outdeg);
}

inline GraphFile load_graph_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(Errc::InvalidParams, "cannot open " + path);
  return load_graph(is);
}

}  // namespace brcycle
