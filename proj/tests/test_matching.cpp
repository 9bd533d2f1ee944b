#include <gtest/gtest.h>

#include <random>

#include "smc/matching.hpp"
#include "support/brute.hpp"

namespace smc {
namespace {

WeightedGraph random_graph(std::mt19937_64& rng, int n, double density, int maxw) {
  WeightedGraph g(n);
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> wd(0, maxw);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (keep(rng)) g.add_edge(i, j, wd(rng));
  return g;
}

TEST(MinPerfectMatching, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    int n = 2 * std::uniform_int_distribution<int>(1, 5)(rng);
    auto g = random_graph(rng, n, trial % 3 == 0 ? 0.4 : 0.8, trial % 2 ? 5 : 1000);
    auto got = min_weight_perfect_matching(g);
    auto want = brute::min_perfect_matching(g);
    ASSERT_EQ(got.has_value(), want.has_value()) << "trial " << trial;
    if (got) {
      EXPECT_TRUE(brute::is_matching(g, *got));
      EXPECT_EQ(2 * got->size(), n);
      EXPECT_EQ(matching_weight(g, *got), *want) << "trial " << trial;
    }
  }
}

TEST(MaxWeightMatching, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    int n = std::uniform_int_distribution<int>(2, 9)(rng);
    auto g = random_graph(rng, n, 0.6, 20);
    if (g.edge_count() > 20) continue;
    for (bool card : {false, true}) {
      auto m = max_weight_matching(g, card);
      EXPECT_TRUE(brute::is_matching(g, m));
      EXPECT_EQ(matching_weight(g, m), brute::max_weight_matching(g, card)) << "trial " << trial;
      if (card) EXPECT_EQ(m.size(), brute::max_matching_size(g));
    }
  }
}

TEST(MinPerfectMatching, OddVertexCountHasNone) {
  WeightedGraph g(3);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  EXPECT_FALSE(min_weight_perfect_matching(g).has_value());
}

TEST(MinPerfectMatching, PrefersCheapPairing) {
  WeightedGraph g(4);
  g.add_edge(0, 1, 10);
  g.add_edge(2, 3, 10);
  g.add_edge(0, 2, 1);
  g.add_edge(1, 3, 2);
  auto m = min_weight_perfect_matching(g);
  ASSERT_TRUE(m);
  EXPECT_EQ(matching_weight(g, *m), 3);
}

TEST(CardinalityMatching, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    int n = std::uniform_int_distribution<int>(1, 11)(rng);
    auto g = random_graph(rng, n, 0.35, 1);
    if (g.edge_count() > 22) continue;
    auto m = max_cardinality_matching(g);
    EXPECT_TRUE(brute::is_matching(g, m));
    EXPECT_EQ(m.size(), brute::max_matching_size(g)) << "trial " << trial;
  }
}

TEST(CardinalityMatching, OddCycleWithTail) {
  // A 5-cycle with a pendant needs a blossom contraction to reach size 3.
  WeightedGraph g(6);
  for (int i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5, 0);
  g.add_edge(0, 5, 0);
  EXPECT_EQ(max_cardinality_matching(g).size(), 3);
}

TEST(Assignment, AgreesWithPermutations) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    int n = std::uniform_int_distribution<int>(1, 7)(rng);
    CostMatrix c(n, std::vector<std::optional<Weight>>(n));
    std::bernoulli_distribution forbid(0.25);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!forbid(rng)) c[i][j] = std::uniform_int_distribution<int>(-50, 100)(rng);
    auto got = min_cost_assignment(c);
    auto want = brute::min_assignment(c);
    ASSERT_EQ(got.has_value(), want.has_value()) << "trial " << trial;
    if (got) {
      Weight s = 0;
      std::vector<char> used(n, 0);
      for (int i = 0; i < n; ++i) {
        ASSERT_TRUE(c[i][(*got)[i]].has_value());
        ASSERT_FALSE(used[(*got)[i]]);
        used[(*got)[i]] = 1;
        s += *c[i][(*got)[i]];
      }
      EXPECT_EQ(s, *want);
    }
  }
}

TEST(EdgeCover, MinimumAndMinimal) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    int n = std::uniform_int_distribution<int>(2, 8)(rng);
    auto g = random_graph(rng, n, 0.5, 1);
    std::vector<int> deg(n, 0);
    for (auto& e : g.edges()) ++deg[e.u], ++deg[e.v];
    if (std::count(deg.begin(), deg.end(), 0) || g.edge_count() > 18) continue;
    auto cover = minimal_edge_cover(g);
    std::vector<int> cov(n, 0);
    for (int id : cover) ++cov[g.edge(id).u], ++cov[g.edge(id).v];
    for (int v = 0; v < n; ++v) EXPECT_GE(cov[v], 1);
    for (int id : cover) EXPECT_TRUE(cov[g.edge(id).u] == 1 || cov[g.edge(id).v] == 1);
    EXPECT_EQ(static_cast<int>(cover.size()), brute::min_edge_cover_size(g));
  }
}

TEST(EdgeCover, IsolatedVertexRejected) {
  WeightedGraph g(3);
  g.add_edge(0, 1, 0);
  EXPECT_THROW(minimal_edge_cover(g), PreconditionError);
}

}  // namespace
}  // namespace smc
