#include <gtest/gtest.h>

#include <set>

#include "smc/generate.hpp"
#include "smc/oracle.hpp"

namespace smc {
namespace {

TEST(SmcOracle, DynamicProgramAgreesWithPermutationEnumeration) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    int n = 4 + static_cast<int>(seed % 5);
    auto sizes = random_group_sizes(n, seed);
    for (auto kind : {InstanceKind::euclidean, InstanceKind::one_two, InstanceKind::asymmetric}) {
      auto inst = generate_instance(kind, n, sizes, seed * 7 + 1);
      auto dp = brute_force_smc(inst);
      EXPECT_TRUE(validate_solution(inst, dp.cover).ok());
      EXPECT_EQ(dp.cost, enumerate_smc(inst)) << "seed " << seed;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 180);
}

TEST(SmcOracle, PairGroupAloneCostsTwiceItsEdge) {
  auto inst = make_instance({{0, 5}, {5, 0}}, {{0, 1}}, WeightClass::general_metric);
  auto sol = brute_force_smc(inst);
  EXPECT_EQ(sol.cost, 10);
  ASSERT_EQ(sol.cover.cycles.size(), 1u);
  EXPECT_TRUE(sol.cover.cycles[0].pair);
}

TEST(SmcOracle, BudgetIsEnforced) {
  auto inst = generate_instance(InstanceKind::asymmetric, 9, {9}, 1);
  EXPECT_THROW(brute_force_smc(inst), BudgetExceeded);
  EXPECT_THROW(enumerate_smc(inst), BudgetExceeded);
}

TEST(TwoFactorOracle, AllMinimumCoversShareTheOptimum) {
  auto inst = generate_instance(InstanceKind::one_two, 8, {4, 4}, 3);
  auto best = brute_force_2factor(inst, {});
  auto all = all_min_2factors(inst, {}, 9);
  ASSERT_FALSE(all.empty());
  for (const auto& c : all) EXPECT_EQ(cover_cost(inst, c), best.cost);
  auto sorted = all;
  for (auto& c : sorted) c = canonical(c);
  std::sort(sorted.begin(), sorted.end(), [](const CycleCover& a, const CycleCover& b) {
    return a.cycles.front().vertices < b.cycles.front().vertices ||
           (a.cycles.front().vertices == b.cycles.front().vertices && a.cycles.size() < b.cycles.size());
  });
  EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
}

TEST(SndOracle, NeverAboveCycleCoverOptimum) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    int n = 4 + static_cast<int>(seed % 3);
    auto inst = generate_instance(InstanceKind::euclidean, n, random_group_sizes(n, seed), seed);
    auto snd = brute_force_snd(inst);
    auto smc = brute_force_smc(inst);
    EXPECT_LE(snd.cost, smc.cost);
    EXPECT_TRUE(satisfies_requirements(build_requirements(inst), snd.edges));
    EXPECT_EQ(snd.edges.weight(inst), snd.cost);
  }
}

TEST(ForestOracle, SpansEveryGroup) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = generate_instance(InstanceKind::euclidean, 9, {3, 2, 4}, seed);
    auto f = brute_force_steiner_forest(inst);
    auto comp = components(f.edges);
    for (const auto& g : inst.groups())
      for (int v : g) EXPECT_EQ(comp[v], comp[g[0]]);
    std::set<int> distinct(comp.begin(), comp.end());
    EXPECT_EQ(f.edges.edge_count(), 9 - static_cast<int>(distinct.size()));
  }
}

}  // namespace
}  // namespace smc
