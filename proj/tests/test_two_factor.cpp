#include <gtest/gtest.h>

#include "smc/generate.hpp"
#include "smc/oracle.hpp"
#include "smc/two_factor.hpp"

namespace smc {
namespace {

TEST(TwoFactor, UndirectedMatchesExhaustiveSearch) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    int n = 3 + static_cast<int>(seed % 7);
    auto kind = seed % 2 ? InstanceKind::one_two : InstanceKind::euclidean;
    auto inst = generate_instance(kind, n, random_group_sizes(n, seed), seed + 100);
    for (bool pairs : {true, false}) {
      if (!pairs && n < 3) continue;
      auto got = min_weight_2factor(inst, pairs);
      ASSERT_TRUE(check_two_factor(inst, got).ok()) << check_two_factor(inst, got).summary();
      auto want = brute_force_2factor(inst, {false, false, pairs});
      EXPECT_EQ(cover_cost(inst, got), want.cost) << "seed " << seed << " pairs " << pairs;
    }
  }
}

TEST(TwoFactor, PairTwoCycleUsedWhenCheapest) {
  // Two far-apart pairs: closing each pair on itself is optimal.
  std::vector<std::vector<std::int64_t>> w = {
      {0, 1, 10, 10}, {1, 0, 10, 10}, {10, 10, 0, 1}, {10, 10, 1, 0}};
  auto inst = make_instance(w, {{0, 1}, {2, 3}}, WeightClass::general_metric);
  auto f = min_weight_2factor(inst, true);
  EXPECT_EQ(cover_cost(inst, f), 4);
  EXPECT_EQ(f.cycles.size(), 2u);
  EXPECT_EQ(cover_cost(inst, min_weight_2factor(inst, false)), 22);
}

TEST(TwoFactor, DirectedMatchesExhaustiveSearch) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    int n = 2 + static_cast<int>(seed % 6);
    auto inst = generate_instance(InstanceKind::asymmetric, n, {n}, seed);
    auto got = min_weight_directed_2factor(inst);
    ASSERT_TRUE(check_two_factor(inst, got).ok());
    EXPECT_EQ(cover_cost(inst, got), brute_force_2factor(inst, {true, false, false}).cost);
  }
}

TEST(TwoFactor, DirectedOnSubset) {
  auto inst = generate_instance(InstanceKind::asymmetric, 7, {7}, 4);
  auto f = min_weight_directed_2factor(inst, {1, 3, 6});
  int covered = 0;
  for (auto& c : f.cycles) covered += c.size();
  EXPECT_EQ(covered, 3);
}

TEST(TwoFactor, TriangleFreeMatchesExhaustiveSearch) {
  int with_triangle_in_plain = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    int n = 4 + static_cast<int>(seed % 6);
    GeneratorOptions opts;
    opts.one_density = 0.2 + 0.1 * static_cast<double>(seed % 6);
    auto inst = generate_instance(InstanceKind::one_two, n, random_group_sizes(n, seed), seed, opts);
    if (has_triangle(min_weight_2factor(inst, true))) ++with_triangle_in_plain;
    for (bool pairs : {true, false}) {
      auto got = min_weight_triangle_free_2factor(inst, pairs);
      ASSERT_TRUE(check_two_factor(inst, got).ok());
      EXPECT_FALSE(has_triangle(got));
      auto want = brute_force_2factor(inst, {false, true, pairs});
      EXPECT_EQ(cover_cost(inst, got), want.cost) << "seed " << seed << " pairs " << pairs;
    }
  }
  EXPECT_GT(with_triangle_in_plain, 20);
}

TEST(TwoFactor, TriangleFreeRejectsOtherClasses) {
  auto inst = generate_instance(InstanceKind::euclidean, 6, {6}, 1);
  EXPECT_THROW(min_weight_triangle_free_2factor(inst), PreconditionError);
  EXPECT_THROW(solve_two_factor(inst, {false, true, true}), PreconditionError);
}

TEST(TwoFactor, TriangleFreeMatcherBudget) {
  BruteForceTriangleFreeMatcher small(5);
  auto inst = generate_instance(InstanceKind::one_two, 8, {8}, 2);
  std::vector<int> all{0, 1, 2, 3, 4, 5, 6, 7};
  EXPECT_THROW(triangle_free_from_simple_2matching(inst, all, small), BudgetExceeded);
}

TEST(TwoFactor, SmallPathRemainderIsAvoided) {
  // Weight-one edges: a 4-cycle 0-1-2-3 and a triangle 4-5-6 plus edge 3-4.
  // The largest triangle-free 2-matching leaves a 3-vertex path, which cannot
  // close into a legal cycle; the exact matcher finds another structure.
  std::vector<std::vector<std::int64_t>> w(7, std::vector<std::int64_t>(7, 2));
  auto one = [&](int a, int b) { w[a][b] = w[b][a] = 1; };
  one(0, 1), one(1, 2), one(2, 3), one(3, 0), one(4, 5), one(5, 6), one(6, 4), one(3, 4);
  for (int i = 0; i < 7; ++i) w[i][i] = 0;
  auto inst = make_instance(w, {{0, 1, 2, 3, 4, 5, 6}}, WeightClass::one_two);
  auto got = min_weight_triangle_free_2factor(inst, false);
  EXPECT_EQ(cover_cost(inst, got), brute_force_2factor(inst, {false, true, false}).cost);
  EXPECT_FALSE(has_triangle(got));
}

}  // namespace
}  // namespace smc
