#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "brcycle/graph_io.hpp"

using namespace brcycle;

namespace {

std::size_t parse_error_line(const std::string& text) {
  std::istringstream is(text);
  try {
    load_graph(is);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(GraphIo, PairRoundTrip) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng r(s);
    const std::size_t n = 4u << (s % 5);
    const auto pair = gen_br_pair(paper_params(n, 2), r);
    std::ostringstream os;
    save_graph(os, pair);
    std::istringstream is(os.str());
    const auto back = load_graph(is);
    ASSERT_TRUE(back.is_pair());
    EXPECT_EQ(*back.pair, pair);
    EXPECT_EQ(back.graph, pair.graph);
    EXPECT_EQ(back.outdeg, 2u);
  }
}

TEST(GraphIo, SimpleRoundTrip) {
  Rng r(1);
  const auto g = gen_br_simple(30, 3, r);
  std::ostringstream os;
  save_graph(os, g, 3);
  EXPECT_EQ(os.str().rfind("BRS v=30 d=3\n", 0), 0u);
  std::istringstream is(os.str());
  const auto back = load_graph(is);
  EXPECT_FALSE(back.is_pair());
  EXPECT_EQ(back.graph, g);
  EXPECT_EQ(back.outdeg, 3u);
}

TEST(GraphIo, HandWrittenFixtureIsValid) {
  // N=4, L=4, W=2, d=2. Blue 0-3; red1 {4,5}, red2 {6,7}, red3 {8,9}, red4 {10,11}.
  const std::string text =
      "BR v=12 d=2 L=4 W=2 N=4\n"
      "b b b b r1 r1 r2 r2 r3 r3 r4 r4\n"
      "0: 1 4\n"
      "1: 7 2\n"
      "2: 0 5\n"
      "3: 6 1\n"
      "4: 6 7\n"
      "5: 7 6\n"
      "6: 8 9\n"
      "7: 9 8\n"
      "8: 10 11\n"
      "9: 11 10\n"
      "10:\n"
      "11:\n";
  std::istringstream is(text);
  const auto f = load_graph(is);
  ASSERT_TRUE(f.is_pair());
  EXPECT_TRUE(validate_br(*f.pair).empty());
  EXPECT_EQ(f.pair->params, make_params(4, 4, 2, 2));
  EXPECT_TRUE(f.graph.has_edge(2, 0));
}

TEST(GraphIo, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line(""), 1u);
  EXPECT_EQ(parse_error_line("XX v=2 d=1\n0: 1\n1: 0\n"), 1u);
  EXPECT_EQ(parse_error_line("BRS v=2\n0: 1\n1: 0\n"), 1u);
  EXPECT_EQ(parse_error_line("BRS v=2 d=x\n0: 1\n1: 0\n"), 1u);
  EXPECT_EQ(parse_error_line("BR v=12 d=2 L=3 W=2 N=4\n"), 1u);
  EXPECT_EQ(parse_error_line("BR v=12 d=2 L=4 W=2 N=4\nb b q\n"), 2u);
  EXPECT_EQ(parse_error_line("BRS v=2 d=1\n0: 1\n1: 5\n"), 3u);
  EXPECT_EQ(parse_error_line("BRS v=2 d=1\n0: 1\n"), 3u);
  EXPECT_EQ(parse_error_line("BRS v=2 d=1\n0: 1\n1:\n"), 3u);
  EXPECT_EQ(parse_error_line("BRS v=2 d=1\n0: 1\n1: 0\nextra\n"), 4u);
}

TEST(GraphIo, MissingFileThrows) {
  EXPECT_THROW(load_graph_file("/nonexistent/graph.txt"), Error);
}
