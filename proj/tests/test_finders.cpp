#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "brcycle/finders.hpp"
#include "brcycle/graph_core.hpp"

using namespace brcycle;

namespace {

BRPair make_pair_for(const BRParams& p, std::uint64_t seed) {
  Rng r(seed);
  return gen_br_pair(p, r);
}

bool has_cycle(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> indeg(n, 0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.out(u)) ++indeg[v];
  std::vector<Vertex> stack;
  for (Vertex u = 0; u < n; ++u)
    if (indeg[u] == 0) stack.push_back(u);
  std::size_t removed = 0;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    ++removed;
    for (Vertex v : g.out(u))
      if (--indeg[v] == 0) stack.push_back(v);
  }
  return removed < n;
}

}  // namespace

TEST(RandomWalk, TwoVertexGraphWithinTwoQueries) {
  Rng g(1);
  const auto graph = gen_br_simple(2, 1, g);
  for (std::uint64_t s = 0; s < 20; ++s) {
    Oracle o(graph, QueryModel::Vertex);
    Rng r(s);
    const auto out = run_random_walk_finder(o, 10, r);
    ASSERT_TRUE(out.cycle);
    EXPECT_LE(out.queries_used, 2u);
    EXPECT_TRUE(verify_cycle(graph, *out.cycle));
  }
}

TEST(RandomWalk, ClaimsAreRealCycles) {
  const auto pair = make_pair_for(make_params(256, 8, 64, 3), 2);
  for (std::uint64_t s = 0; s < 20; ++s) {
    Oracle o(pair, QueryModel::Vertex, RepeatPolicy::Lenient);
    Rng r(s);
    const auto out = run_random_walk_finder(o, 200, r);
    EXPECT_EQ(out.queries_used, o.query_count());
    EXPECT_LE(out.queries_used, 200u);
    if (out.cycle) {
      EXPECT_TRUE(verify_cycle(pair.graph, *out.cycle));
    }
  }
}

// Reds only reach higher layers and then a sink, so a budget that dies before
// the first restart never closes a cycle.
TEST(RandomWalk, WalkFromRedHitsSinkFirst) {
  const auto p = make_params(64, 8, 16, 2);
  int checked = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto pair = make_pair_for(p, 1000 + s);
    Rng r(s);
    Rng peek = r;
    const Vertex start = random_vertex(pair.graph.vertex_count(), peek);
    if (!pair.coloring[start].is_red()) continue;
    ++checked;
    Oracle o(pair, QueryModel::Vertex, RepeatPolicy::Lenient);
    const std::size_t to_sink = p.layers - pair.coloring[start].layer() + 1;
    const auto out = run_random_walk_finder(o, to_sink, r);
    EXPECT_FALSE(out.cycle);
  }
  EXPECT_GT(checked, 50);
}

TEST(RandomWalk, SimpleGraphSqrtBudget) {
  const std::size_t n = 10000;
  const auto budget = static_cast<std::uint64_t>(std::ceil(10 * std::sqrt(double(n))));
  int hits = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    Rng g(20000 + t);
    const auto graph = gen_br_simple(n, 3, g);
    Oracle o(graph, QueryModel::Vertex, RepeatPolicy::Lenient);
    Rng r(30000 + t);
    const auto out = run_random_walk_finder(o, budget, r);
    if (out.cycle) {
      ++hits;
      EXPECT_TRUE(verify_cycle(graph, *out.cycle));
    }
  }
  EXPECT_GE(hits, trials * 95 / 100);
}

TEST(Birthday, FewCollisionsAtSmallBudget) {
  const std::size_t n = 10000;
  double total = 0;
  const int trials = 500;
  Rng g(3);
  const auto graph = gen_br_simple(n, 2, g);
  for (int t = 0; t < trials; ++t) {
    Oracle o(graph, QueryModel::AdjList);
    Rng r(t);
    const auto out = run_birthday_sampler(o, 30, r);
    EXPECT_EQ(out.queries_used, 30u);
    EXPECT_EQ(out.aux.at("distinct_pairs"), 30u);
    total += double(out.aux.at("collisions"));
  }
  EXPECT_LT(total / trials, 0.5);
}

TEST(Birthday, CollisionsGrowWithBudget) {
  Rng g(4);
  const auto graph = gen_br_simple(2000, 2, g);
  double prev = -1;
  for (std::uint64_t q : {20, 80, 320}) {
    double total = 0;
    for (int t = 0; t < 100; ++t) {
      Oracle o(graph, QueryModel::AdjList);
      Rng r(t);
      total += double(run_birthday_sampler(o, q, r).aux.at("collisions"));
    }
    EXPECT_GT(total, prev);
    prev = total;
  }
}

TEST(Birthday, FindsCycleOnExhaustiveBudget) {
  Rng g(5);
  const auto graph = gen_br_simple(20, 2, g);
  Oracle o(graph, QueryModel::AdjList);
  Rng r(6);
  const auto out = run_birthday_sampler(o, 1000, r);
  ASSERT_TRUE(out.cycle);
  EXPECT_TRUE(verify_cycle(graph, *out.cycle));
  EXPECT_LE(out.queries_used, 40u);
}

TEST(Birthday, NeedsAdjacencyModel) {
  Rng g(5);
  const auto graph = gen_br_simple(20, 2, g);
  Oracle o(graph, QueryModel::Vertex);
  Rng r(1);
  EXPECT_THROW(run_birthday_sampler(o, 10, r), Error);
}

TEST(IdentifyColor, RedIsExact) {
  const auto p = make_params(256, 8, 64, 4);
  const auto pair = make_pair_for(p, 7);
  Rng r(8);
  for (std::uint16_t layer = 1; layer <= 8; ++layer) {
    Oracle o(pair, QueryModel::Vertex, RepeatPolicy::Lenient);
    const Vertex v = pair.coloring.members(Color::red(layer))[0];
    const auto est = identify_color(o, v, p.layers, 6, 2 * p.layers, r);
    ASSERT_EQ(est.verdict, ColorVerdict::Red);
    EXPECT_EQ(est.layer, layer);
  }
}

TEST(IdentifyColor, BlueMostlyBlue) {
  const auto p = make_params(256, 8, 64, 4);
  const auto pair = make_pair_for(p, 9);
  Rng r(10);
  int blue = 0, red = 0;
  for (Vertex v : pair.coloring.members(Color::blue())) {
    Oracle o(pair, QueryModel::Vertex, RepeatPolicy::Lenient);
    const auto est = identify_color(o, v, p.layers, 6, 2 * p.layers, r);
    blue += est.verdict == ColorVerdict::Blue;
    red += est.verdict == ColorVerdict::Red;
  }
  EXPECT_GT(blue, 9 * red);
}

TEST(IdentifyColor, NoWalksIsUnknown) {
  const auto p = make_params(16, 4, 8, 2);
  const auto pair = make_pair_for(p, 11);
  Oracle o(pair, QueryModel::Vertex, RepeatPolicy::Lenient);
  Rng r(1);
  EXPECT_EQ(identify_color(o, 0, p.layers, 0, 8, r).verdict, ColorVerdict::Unknown);
  EXPECT_THROW(identify_color(o, 0, p.layers, 1, 3, r), Error);
}

TEST(Walls, DepthZeroIsOrigin) {
  const auto pair = make_pair_for(make_params(16, 4, 8, 2), 12);
  Oracle o(pair, QueryModel::Vertex);
  const auto w = build_wall(o, 5, 0);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->members, std::vector<Vertex>{5});
  EXPECT_EQ(o.query_count(), 0u);
}

TEST(Walls, FullFanoutCoversLayer) {
  // d = W: every red vertex links to the whole next layer.
  const auto p = make_params(16, 8, 4, 4);
  const auto pair = make_pair_for(p, 13);
  Oracle o(pair, QueryModel::Vertex);
  const Vertex v = pair.coloring.members(Color::red(2))[0];
  const auto w = build_wall(o, v, 2, 2);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->layer_estimate, 4u);
  const auto r4 = pair.coloring.members(Color::red(4));
  EXPECT_EQ(std::set<Vertex>(w->members.begin(), w->members.end()),
            std::set<Vertex>(r4.begin(), r4.end()));
}

TEST(Walls, SinkBeforeLastLevelFails) {
  const auto p = make_params(16, 4, 8, 2);
  const auto pair = make_pair_for(p, 14);
  Oracle o(pair, QueryModel::Vertex);
  const Vertex v = pair.coloring.members(Color::red(3))[0];
  EXPECT_FALSE(build_wall(o, v, 3, 3));
}

TEST(Walls, CoverageGrowsToHalfLayer) {
  const auto p = make_params(1024, 8, 256, 4);
  double total = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto pair = make_pair_for(p, 100 + s);
    Oracle o(pair, QueryModel::Vertex);
    const Vertex v = pair.coloring.members(Color::red(1))[0];
    const auto w = build_wall(o, v, 4, 1);
    ASSERT_TRUE(w);
    for (Vertex x : w->members) EXPECT_TRUE(pair.coloring[x].is_red(5));
    total += double(w->members.size()) / p.width;
  }
  EXPECT_GE(total / 10, 0.5);
}

TEST(Algorithm2, SingleWallRunsAndClaimsAreReal) {
  const auto p = make_params(1024, 8, 256, 4);
  int found = 0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto pair = make_pair_for(p, 200 + s);
    Oracle o(pair, QueryModel::Vertex, RepeatPolicy::Lenient);
    Alg2Options opt;
    opt.walls = 1;
    Rng r(s);
    const auto out = run_algorithm2(o, p, opt, r);
    EXPECT_EQ(out.queries_used, o.query_count());
    EXPECT_LE(out.queries_used, default_path_budget(p));
    if (out.cycle) {
      ++found;
      EXPECT_TRUE(verify_cycle(pair.graph, *out.cycle));
    }
  }
  EXPECT_GT(found, 0);
}

TEST(Algorithm1, PathIsBlueAndClaimsAreReal) {
  const auto p = make_params(1024, 8, 256, 4);
  int found = 0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto pair = make_pair_for(p, 300 + s);
    Oracle o(pair, QueryModel::Vertex, RepeatPolicy::Lenient);
    Alg1Options opt;
    std::size_t ids = 0, exact = 0;
    opt.on_identify = [&](Vertex v, const ColorEstimate& e) {
      ++ids;
      exact += e.color() == pair.coloring[v];
    };
    Rng r(s);
    const auto out = run_algorithm1(o, p, opt, r);
    EXPECT_EQ(out.queries_used, o.query_count());
    EXPECT_LE(out.queries_used, default_path_budget(p));
    std::size_t blue = 0;
    for (Vertex v : out.path) blue += pair.coloring[v].is_blue();
    EXPECT_GE(blue * 10, out.path.size() * 9);
    EXPECT_GE(exact * 10, ids * 9);
    if (out.cycle) {
      ++found;
      EXPECT_TRUE(verify_cycle(pair.graph, *out.cycle));
    }
  }
  EXPECT_GT(found, 0);
}

TEST(Bfs, FullExplorationFindsCycle) {
  const auto p = make_params(64, 8, 16, 2);
  int cyclic = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto pair = make_pair_for(p, 400 + s);
    if (!has_cycle(pair.graph)) continue;
    ++cyclic;
    Oracle o(pair, QueryModel::Vertex, RepeatPolicy::Lenient);
    BfsOptions opt;
    opt.repetitions = 1;
    opt.explore_budget = pair.graph.vertex_count();
    Rng r(s);
    const auto out = run_bfs_heuristic(o, opt, r);
    ASSERT_TRUE(out.cycle) << s;
    EXPECT_TRUE(verify_cycle(pair.graph, *out.cycle));
  }
  EXPECT_GT(cyclic, 0);
}

TEST(Bfs, FromRedFindsNothing) {
  const auto p = make_params(64, 8, 16, 2);
  const auto pair = make_pair_for(p, 500);
  Oracle o(pair, QueryModel::Vertex, RepeatPolicy::Lenient);
  const Vertex v = pair.coloring.members(Color::red(1))[0];
  const auto out = bfs_from(o, v, pair.graph.vertex_count());
  EXPECT_FALSE(out.cycle);
  for (const auto& rec : o.history()) EXPECT_TRUE(pair.coloring[rec.vertex].is_red());
}
