#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "smc/asymmetric_approx.hpp"
#include "smc/generate.hpp"
#include "smc/oracle.hpp"

namespace smc {
namespace {

Instance random_asym(int n, std::uint64_t seed) {
  return generate_instance(InstanceKind::asymmetric, n, random_group_sizes(n, seed * 5 + 3), seed);
}

// Random directed cover with cycles of length >= 2.
CycleCover random_cover(int n, std::mt19937_64& rng) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  CycleCover c;
  c.directed = true;
  for (int i = 0; i < n;) {
    int len = std::uniform_int_distribution<int>(2, 4)(rng);
    if (n - i - len < 2) len = n - i;
    c.cycles.push_back({std::vector<int>(perm.begin() + i, perm.begin() + i + len), false});
    i += len;
  }
  return c;
}

int recount_eta(const Instance& inst, const CycleCover& c) {
  int count = 0;
  for (const auto& cyc : c.cycles) {
    bool bad = false;
    for (int v : cyc.vertices)
      for (int u : inst.groups()[inst.group_of(v)])
        bad = bad || std::find(cyc.vertices.begin(), cyc.vertices.end(), u) == cyc.vertices.end();
    count += bad;
  }
  return count;
}

ArcList arcs_of(const std::vector<std::vector<int>>& cycles) {
  ArcList a;
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) a.push_back({c[i], c[(i + 1) % c.size()]});
  return a;
}

TEST(Eta, FeasibleAndSplit) {
  auto inst = random_asym(6, 1);
  auto sol = brute_force_smc(inst);
  EXPECT_EQ(eta(inst, sol.cover), 0);
  std::vector<std::vector<std::int64_t>> w(4, std::vector<std::int64_t>(4, 1));
  for (int v = 0; v < 4; ++v) w[v][v] = 0;
  auto one = make_instance(w, {{0, 1, 2, 3}}, WeightClass::asymmetric_metric, false);
  CycleCover split{{{{0, 1}, false}, {{2, 3}, false}}, true};
  EXPECT_EQ(eta(one, split), 2);
}

TEST(Eta, MatchesRecount) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(4, 12)(rng);
    auto inst = random_asym(n, trial);
    auto c = random_cover(n, rng);
    EXPECT_EQ(eta(inst, c), recount_eta(inst, c));
  }
}

TEST(Representatives, TwoCyclesOneGroup) {
  std::vector<std::vector<std::int64_t>> w(4, std::vector<std::int64_t>(4, 1));
  for (int v = 0; v < 4; ++v) w[v][v] = 0;
  auto inst = make_instance(w, {{0, 1, 2, 3}}, WeightClass::asymmetric_metric, false);
  CycleCover c{{{{0, 1}, false}, {{2, 3}, false}}, true};
  auto r = representatives(inst, c);
  EXPECT_EQ(r.vertices, (std::vector<int>{0, 2}));
  EXPECT_EQ(r.lonely.size(), 2u);
}

TEST(Representatives, InvariantsOnRandomCovers) {
  std::mt19937_64 rng(9);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = std::uniform_int_distribution<int>(4, 14)(rng);
    auto inst = random_asym(n, trial + 100);
    auto c = random_cover(n, rng);
    if (eta(inst, c) == 0) continue;
    auto r = representatives(inst, c);
    EXPECT_FALSE(representative_violation(inst, c, r).has_value()) << trial;
    ++checked;
  }
  EXPECT_GT(checked, 500);
}

TEST(StronglyEulerian, Checks) {
  EXPECT_TRUE(is_strongly_eulerian(6, arcs_of({{0, 1, 2}, {3, 4, 5}})));
  // Two triangles sharing vertex 0: k(0) = 2 and removing 0 splits them.
  EXPECT_TRUE(is_strongly_eulerian(5, arcs_of({{0, 1, 2}, {0, 3, 4}})));
  // Chord cycle inside one cycle: removing 0 does not split anything.
  std::string why;
  EXPECT_FALSE(is_strongly_eulerian(4, arcs_of({{0, 1, 2, 3}, {0, 2}}), &why));
  EXPECT_NE(why.find("removing 0"), std::string::npos);
  EXPECT_FALSE(is_strongly_eulerian(3, {{0, 1}, {1, 2}}));
}

TEST(DirectedShortcut, AlreadyTwoFactor) {
  auto inst = random_asym(6, 3);
  auto c = directed_shortcut(inst, arcs_of({{0, 1, 2}, {3, 4, 5}}));
  EXPECT_EQ(canonical(c), canonical(CycleCover{{{{0, 1, 2}, false}, {{3, 4, 5}, false}}, true}));
}

TEST(DirectedShortcut, TrianglesSharingAVertex) {
  auto inst = random_asym(5, 4);
  const auto arcs = arcs_of({{0, 1, 2}, {0, 3, 4}});
  Weight before = 0;
  for (auto [a, b] : arcs) before += inst.w(a, b);
  auto c = directed_shortcut(inst, arcs);
  ASSERT_EQ(c.cycles.size(), 1u);
  EXPECT_EQ(c.cycles[0].size(), 5);
  EXPECT_LE(cover_cost(inst, c), before);
}

TEST(DirectedShortcut, RejectsChordCycleAndFallbackHandlesIt) {
  auto inst = random_asym(4, 5);
  const auto arcs = arcs_of({{0, 1, 2, 3}, {0, 2}});
  EXPECT_THROW(directed_shortcut(inst, arcs), PreconditionError);
  auto c = euler_shortcut(inst, arcs);
  ASSERT_EQ(c.cycles.size(), 1u);
  EXPECT_EQ(c.cycles[0].size(), 4);
  Weight before = 0;
  for (auto [a, b] : arcs) before += inst.w(a, b);
  EXPECT_LE(cover_cost(inst, c), before);
}

TEST(DirectedShortcut, RandomUnionsKeepComponentsAndWeight) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(4, 10)(rng);
    auto inst = random_asym(n, trial + 300);
    auto base = random_cover(n, rng);
    // Second cover on one vertex from each cycle, so every component stays
    // strongly Eulerian.
    std::vector<int> reps;
    for (const auto& c : base.cycles) reps.push_back(c.vertices[0]);
    if (reps.size() < 2) continue;
    std::shuffle(reps.begin(), reps.end(), rng);
    ArcList arcs = arcs_of({reps});
    for (const auto& c : base.cycles) {
      auto more = arcs_of({c.vertices});
      arcs.insert(arcs.end(), more.begin(), more.end());
    }
    ASSERT_TRUE(is_strongly_eulerian(n, arcs));
    Weight before = 0;
    for (auto [a, b] : arcs) before += inst.w(a, b);
    auto c = directed_shortcut(inst, arcs);
    EXPECT_TRUE(check_two_factor(inst, c).ok());
    EXPECT_EQ(c.cycles.size(), 1u);
    EXPECT_LE(cover_cost(inst, c), before);
  }
}

TEST(AsymmetricApprox, PairGroup) {
  auto inst = random_asym(2, 1);
  auto c = approx_asymmetric(inst);
  EXPECT_EQ(cover_cost(inst, c), inst.w(0, 1) + inst.w(1, 0));
}

TEST(AsymmetricApprox, SymmetricInputIsFeasible) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 4 + static_cast<int>(seed % 5);
    auto sym = generate_instance(InstanceKind::euclidean, n, random_group_sizes(n, seed), seed);
    auto c = approx_asymmetric(sym);
    EXPECT_TRUE(validate_solution(sym, c).ok());
    EXPECT_GE(cover_cost(sym, c), brute_force_smc(sym).cost);
  }
}

TEST(AsymmetricApprox, BoundsAgainstOracle) {
  int loops = 0, fallbacks = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    auto inst = random_asym(n, seed + 700);
    auto opt = brute_force_smc(inst);
    AsymTrace t;
    auto c = approx_asymmetric(inst, &t);
    ASSERT_TRUE(validate_solution(inst, c).ok());
    EXPECT_LE(t.initial_weight, opt.cost);
    for (const auto& it : t.iterations) {
      EXPECT_LE(it.inner_weight, opt.cost) << seed;
      EXPECT_LE(4 * it.eta_after, 3 * it.eta_before);
      // The optimum shortcut onto R is a directed 2-factor of R.
      Weight shortcut = 0;
      for (const auto& cyc : opt.cover.cycles) {
        std::vector<int> kept;
        for (int v : cyc.vertices)
          if (std::binary_search(it.r.vertices.begin(), it.r.vertices.end(), v)) kept.push_back(v);
        EXPECT_NE(kept.size(), 1u);
        for (std::size_t i = 0; i < kept.size() && kept.size() > 1; ++i)
          shortcut += inst.w(kept[i], kept[(i + 1) % kept.size()]);
      }
      EXPECT_LE(it.inner_weight, shortcut);
      EXPECT_LE(shortcut, opt.cost);
      ++loops;
    }
    EXPECT_LE(t.factor_count(), asymmetric_iteration_limit(n));
    EXPECT_LE(cover_cost(inst, c), t.factor_count() * opt.cost) << seed;
    fallbacks += t.fallbacks;
  }
  EXPECT_GT(loops, 0);
  // Unions that are not strongly Eulerian do occur (two representatives of
  // one cycle forming their own inner cycle).
  EXPECT_GT(fallbacks, 0);
}

TEST(AsymmetricApprox, IterationLimit) {
  EXPECT_EQ(asymmetric_iteration_limit(1), 1);
  EXPECT_EQ(asymmetric_iteration_limit(2), 4);   // (4/3)^3 = 2.37
  EXPECT_EQ(asymmetric_iteration_limit(8), 9);   // (4/3)^8 = 9.99, (4/3)^7 = 7.49
}

}  // namespace
}  // namespace smc
