#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "brcycle/graph_core.hpp"
#include "brcycle/oracle.hpp"

using namespace brcycle;

namespace {

BRPair make_pair_for(std::size_t n, std::size_t l, std::size_t d, std::uint64_t seed) {
  Rng r(seed);
  return gen_br_pair(make_params(n, l, 2 * n / l, d), r);
}

// Every vertex of the current epoch's knowledge graph has at most one parent.
bool epoch_is_forest(const Oracle& o) {
  const auto& e = o.epochs().current;
  const auto kg = knowledge_graph(segment(o.history(), e));
  for (Vertex v : kg.vertices())
    if (kg.predecessors(v).size() > 1) return false;
  return true;
}

}  // namespace

TEST(Oracle, FreshState) {
  const auto pair = make_pair_for(16, 4, 2, 1);
  Oracle o(pair, QueryModel::Vertex);
  EXPECT_EQ(o.query_count(), 0u);
  EXPECT_TRUE(o.history().empty());
  EXPECT_EQ(o.knowledge().vertex_count(), 0u);
  EXPECT_TRUE(o.epochs().closed.empty());
  EXPECT_TRUE(o.revealed().empty());
  EXPECT_EQ(o.vertex_count(), 48u);
  EXPECT_EQ(o.outdegree_bound(), 2u);
  EXPECT_EQ(o.epoch_cap(), 2u);
}

TEST(Oracle, AnswerMatchesGraphAndSinkIsEmpty) {
  const auto pair = make_pair_for(16, 4, 2, 2);
  Oracle o(pair, QueryModel::Vertex);
  const Vertex sink = pair.coloring.members(Color::red(4))[0];
  EXPECT_TRUE(o.query_vertex(sink).empty());
  EXPECT_TRUE(o.knowledge().is_sink(sink));
  const Vertex b = pair.coloring.members(Color::blue())[0];
  const auto ans = o.query_vertex(b);
  const auto exp = pair.graph.out(b);
  EXPECT_TRUE(std::equal(ans.begin(), ans.end(), exp.begin(), exp.end()));
  EXPECT_FALSE(o.was_surprise(1));
}

TEST(Oracle, TimeoutRevealsAfterHalfL) {
  // L=8: the epoch cap is 4. Query four vertices whose answers are disjoint.
  const auto pair = make_pair_for(64, 8, 2, 3);
  Oracle o(pair, QueryModel::ColorRevelation);
  std::set<Vertex> seen;
  std::vector<Vertex> chosen;
  for (Vertex u = 0; u < pair.graph.vertex_count() && chosen.size() < 4; ++u) {
    if (seen.count(u)) continue;
    bool clash = false;
    for (Vertex v : pair.graph.out(u)) clash = clash || seen.count(v) || v == u;
    if (clash) continue;
    chosen.push_back(u);
    seen.insert(u);
    for (Vertex v : pair.graph.out(u)) seen.insert(v);
  }
  ASSERT_EQ(chosen.size(), 4u);
  for (std::size_t i = 0; i < 3; ++i) {
    o.query_vertex(chosen[i]);
    EXPECT_TRUE(o.revealed().empty());
    EXPECT_TRUE(o.epochs().closed.empty());
  }
  o.query_vertex(chosen[3]);
  ASSERT_EQ(o.epochs().closed.size(), 1u);
  EXPECT_EQ(o.epochs().closed[0].reason, EpochEnd::Timeout);
  EXPECT_EQ(o.revealed().size(), seen.size());
  for (auto [v, c] : o.revealed()) EXPECT_EQ(c, pair.coloring[v]);
}

TEST(Oracle, VertexModelNeverReveals) {
  const auto pair = make_pair_for(16, 4, 2, 4);
  Oracle o(pair, QueryModel::Vertex);
  for (Vertex u = 0; u < 10; ++u) o.query_vertex(u);
  EXPECT_FALSE(o.epochs().closed.empty());
  EXPECT_TRUE(o.revealed().empty());
}

TEST(Oracle, StrictRepeatThrowsLenientIsFree) {
  const auto pair = make_pair_for(16, 4, 2, 5);
  Oracle o(pair, QueryModel::Vertex);
  o.query_vertex(3);
  EXPECT_THROW(o.query_vertex(3), Error);
  const auto again = o.query_vertex(3, RepeatPolicy::Lenient);
  const auto exp = pair.graph.out(3);
  EXPECT_TRUE(std::equal(again.begin(), again.end(), exp.begin(), exp.end()));
  EXPECT_EQ(o.query_count(), 1u);
  EXPECT_EQ(o.history().size(), 1u);
}

TEST(Oracle, OutOfRangeAndWrongModel) {
  const auto pair = make_pair_for(16, 4, 2, 6);
  Oracle o(pair, QueryModel::Vertex);
  EXPECT_THROW(o.query_vertex(48), Error);
  EXPECT_THROW(o.query_adj(0, 1), Error);
  Oracle a(pair, QueryModel::AdjList);
  EXPECT_THROW(a.query_vertex(0), Error);
  EXPECT_THROW(a.query_adj(0, 0), Error);
  EXPECT_THROW(a.query_adj(0, 3), Error);
  EXPECT_THROW(Oracle(pair.graph, QueryModel::ColorRevelation), Error);
}

TEST(Oracle, AdjQueries) {
  const auto pair = make_pair_for(16, 4, 2, 7);
  Oracle o(pair, QueryModel::AdjList);
  const Vertex sink = pair.coloring.members(Color::red(4))[0];
  EXPECT_FALSE(o.query_adj(sink, 1));
  const Vertex b = pair.coloring.members(Color::blue())[0];
  const auto x = o.query_adj(b, 1), y = o.query_adj(b, 2);
  ASSERT_TRUE(x && y);
  EXPECT_NE(*x, *y);
  EXPECT_EQ(*o.query_adj(b, 1), *x);
  EXPECT_EQ(o.query_count(), 4u);
  EXPECT_EQ(o.adj_query_count(), 4u);
  EXPECT_TRUE(o.history().empty());
}

TEST(Oracle, LiveStateMatchesReconstruction) {
  const auto pair = make_pair_for(256, 8, 4, 8);
  Oracle o(pair, QueryModel::ColorRevelation);
  Rng r(99);
  std::size_t k = 0;
  while (o.history().size() < 200) {
    const auto u = static_cast<Vertex>(r.below(pair.graph.vertex_count()));
    if (o.queried(u)) continue;
    o.query_vertex(u);
    ++k;
    const auto& h = o.history();
    EXPECT_EQ(o.was_surprise(k), is_surprise(h, k));
    EXPECT_EQ(o.epochs(), decompose_epochs(h, pair.params.epoch_cap()));
    EXPECT_TRUE(epoch_is_forest(o) || o.epochs().current.size() == 0);
    EXPECT_TRUE(is_valid_knowledge_pair(h, o.revealed(), pair));
    EXPECT_EQ(o.query_count(), h.size());
    EXPECT_EQ(o.knowledge().vertex_count(), knowledge_graph(h).vertex_count());
  }
}

TEST(Oracle, KnowledgePairRejectsTampering) {
  const auto pair = make_pair_for(16, 4, 2, 9);
  Oracle o(pair, QueryModel::ColorRevelation);
  for (Vertex u = 0; u < 6; ++u) o.query_vertex(u);
  ASSERT_TRUE(is_valid_knowledge_pair(o.history(), o.revealed(), pair));
  auto wrong_answer = o.history();
  if (!wrong_answer[0].answer.empty()) wrong_answer[0].answer[0] ^= 1;
  else wrong_answer[0].answer.push_back(1);
  EXPECT_FALSE(is_valid_knowledge_pair(wrong_answer, o.revealed(), pair));
  if (!o.revealed().empty()) {
    auto bad = o.revealed();
    auto it = bad.begin();
    it->second = it->second.is_blue() ? Color::red(1) : Color::blue();
    EXPECT_FALSE(is_valid_knowledge_pair(o.history(), bad, pair));
  }
}

TEST(Oracle, BareDigraphHasNoEpochs) {
  Rng r(10);
  const auto g = gen_br_simple(20, 2, r);
  Oracle o(g, QueryModel::Vertex);
  for (Vertex u = 0; u < 20; ++u) o.query_vertex(u);
  EXPECT_EQ(o.epoch_cap(), 0u);
  EXPECT_TRUE(o.epochs().closed.empty());
}
