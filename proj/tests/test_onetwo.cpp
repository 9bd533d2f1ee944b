#include <gtest/gtest.h>

#include <set>

#include "smc/generate.hpp"
#include "smc/onetwo_approx.hpp"
#include "smc/oracle.hpp"
#include "smc/two_factor.hpp"
#include "support/fixtures.hpp"

namespace smc {
namespace {

Instance random_onetwo(int n, std::uint64_t seed, int min_group = 2) {
  std::vector<int> sizes;
  if (min_group > 2) {
    sizes.assign(n / min_group, min_group);
    for (int extra = n - min_group * static_cast<int>(sizes.size()); extra > 0; --extra) ++sizes[extra % sizes.size()];
  } else {
    sizes = random_group_sizes(n, seed * 7 + 1);
  }
  GeneratorOptions opts;
  opts.one_density = 0.25 + 0.5 * static_cast<double>(seed % 5) / 4;
  return generate_instance(InstanceKind::one_two, n, sizes, seed, opts);
}

Instance all_ones(int n, std::vector<std::vector<int>> groups) {
  std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, 1));
  for (int v = 0; v < n; ++v) w[v][v] = 0;
  return make_instance(w, std::move(groups), WeightClass::one_two);
}

TEST(Special2Factor, AllOnesStaysPure) {
  auto inst = all_ones(6, {{0, 1, 2, 3, 4, 5}});
  auto f = special_2factor(inst);
  EXPECT_EQ(f.nonpure, -1);
  EXPECT_EQ(cover_cost(inst, f.cover), 6);
  for (bool p : f.pure) EXPECT_TRUE(p);
}

TEST(Special2Factor, TwoNonpureTrianglesAreMerged) {
  // Two triangles 012 and 345, each with one weight-two edge, no weight-one
  // edges between them: every minimum 2-factor has two heavy edges.
  std::vector<std::vector<std::int64_t>> w(6, std::vector<std::int64_t>(6, 2));
  auto one = [&](int u, int v) { w[u][v] = w[v][u] = 1; };
  one(0, 1), one(1, 2), one(3, 4), one(4, 5);
  for (int v = 0; v < 6; ++v) w[v][v] = 0;
  auto inst = make_instance(w, {{0, 1, 2, 3, 4, 5}}, WeightClass::one_two);
  CycleCover base{{{{0, 1, 2}, false}, {{3, 4, 5}, false}}, false};
  ASSERT_EQ(cover_cost(inst, base), 8);
  auto f = make_special(inst, base);
  EXPECT_EQ(f.cover.cycles.size(), 1u);
  EXPECT_LE(cover_cost(inst, f.cover), 8);
  EXPECT_EQ(cover_cost(inst, f.cover), brute_force_2factor(inst, {}).cost);
}

TEST(Special2Factor, PropertiesAndMinimumWeight) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 4 + static_cast<int>(seed % 6);
    auto inst = random_onetwo(n, seed);
    auto f = special_2factor(inst);
    EXPECT_FALSE(special_violation(inst, f).has_value()) << seed;
    EXPECT_TRUE(check_two_factor(inst, f.cover).ok()) << seed;
    TwoFactorQuery q;
    q.allow_pair_2cycles = inst.has_pair_groups();
    EXPECT_EQ(cover_cost(inst, f.cover), brute_force_2factor(inst, q).cost) << seed;
  }
}

TEST(Special2Factor, RepairsEveryMinimumFactor) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto inst = random_onetwo(7 + static_cast<int>(seed % 2), seed + 500);
    TwoFactorQuery q;
    q.allow_pair_2cycles = inst.has_pair_groups();
    for (auto& base : all_min_2factors(inst, q, 9)) {
      const Weight w = cover_cost(inst, base);
      auto f = make_special(inst, base);
      EXPECT_EQ(cover_cost(inst, f.cover), w);
      EXPECT_FALSE(special_violation(inst, f).has_value());
    }
  }
}

TEST(AttachmentGraph, NoRightNodesWhenFactorRespectsGroups) {
  auto inst = all_ones(6, {{0, 1, 2}, {3, 4, 5}});
  SpecialTwoFactor f = make_special(inst, CycleCover{{{{0, 1, 2}, false}, {{3, 4, 5}, false}}, false});
  auto b = build_B(inst, f);
  EXPECT_TRUE(b.right_cycle.empty());
  EXPECT_EQ(b.graph.edge_count(), 0);
}

TEST(AttachmentGraph, MatchesDefinitionByScan) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto inst = random_onetwo(6 + static_cast<int>(seed % 5), seed + 1000);
    auto f = special_2factor(inst);
    auto b = build_B(inst, f);
    const auto dis = disrespecting_cycles(inst, f.cover);
    const auto idx = cycle_index(inst.size(), f.cover);
    std::set<std::pair<int, int>> got;
    for (const auto& e : b.graph.edges()) got.insert({std::min(e.u, e.v), b.right_cycle[std::max(e.u, e.v) - b.left]});
    std::set<std::pair<int, int>> want;
    for (int c = 0; c < static_cast<int>(f.cover.cycles.size()); ++c) {
      if (!f.pure[c] || !dis[c]) continue;
      EXPECT_GE(f.cover.cycles[c].size(), 3);
      for (int v = 0; v < inst.size(); ++v) {
        if (idx[v] == c) continue;
        bool adj = false;
        for (int u : f.cover.cycles[c].vertices) adj = adj || inst.weight(u, v) == Rational(1);
        if (adj) want.insert({v, c});
      }
    }
    EXPECT_EQ(got, want) << seed;
  }
}

TEST(AttachmentDigraph, EmptyMatchingGivesIsolatedNodes) {
  auto inst = fixtures::tight_onetwo();
  auto f = make_special(inst, CycleCover{{{{0, 1, 2}, false}, {{3, 5, 7}, false}, {{4, 6, 8}, false}}, false});
  auto b = build_B(inst, f);
  auto d = build_D_and_Dprime(inst, f, b, Matching{});
  ASSERT_EQ(d.components.size(), 3u);
  for (const auto& c : d.components) EXPECT_EQ(c.shape, ComponentShape::isolated);
}

TEST(AttachmentDigraph, ShapesOnRandomMatchings) {
  int paths = 0, trees = 0, broken = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto inst = random_onetwo(9 + static_cast<int>(seed % 4), seed + 2000);
    auto f = special_2factor(inst);
    auto b = build_B(inst, f);
    for (const auto& m : all_maximum_matchings(b, 5000)) {
      auto d = build_D_and_Dprime(inst, f, b, m);
      EXPECT_FALSE(dprime_violation(f, d).has_value());
      for (const auto& c : d.components) {
        paths += c.shape == ComponentShape::path;
        trees += c.shape == ComponentShape::in_tree;
      }
      broken += static_cast<int>(d.broken.size());
    }
  }
  EXPECT_GT(trees, 0);
  EXPECT_GT(paths, 0);
  EXPECT_GT(broken, 0);
}

TEST(OneTwo, SingleTriangle) {
  auto inst = all_ones(3, {{0, 1, 2}});
  auto c = approx_onetwo(inst, OneTwoVariant::ratio_11_9);
  EXPECT_EQ(cover_cost(inst, c), 3);
}

TEST(OneTwo, TightFixture) {
  auto inst = fixtures::tight_onetwo();
  EXPECT_EQ(brute_force_smc(inst).cost, 9);
  EXPECT_EQ(enumerate_smc(inst, OracleBudget{.max_n_permutation = 9}), 9);
  OneTwoTrace t;
  auto c = approx_onetwo(inst, OneTwoVariant::ratio_11_9, TieBreak::adversarial, &t);
  EXPECT_TRUE(validate_solution(inst, c).ok());
  EXPECT_EQ(cover_cost(inst, c), 11);
  EXPECT_EQ(Rational(cover_cost(inst, c), brute_force_smc(inst).cost), Rational(11, 9));
  // The worst run is the three triangles joined along a length-2 path.
  EXPECT_EQ(t.special.cover.cycles.size(), 3u);
  ASSERT_EQ(t.d.components.size(), 1u);
  EXPECT_EQ(t.d.components[0].shape, ComponentShape::path);
  EXPECT_EQ(t.phase1_log.virtual_delta, 2);
  EXPECT_TRUE(t.chain_bound);
  EXPECT_LE(cover_cost(inst, approx_onetwo(inst, OneTwoVariant::ratio_11_9)), 11);
}

TEST(OneTwo, TightFixtureMatchingReachesFirstCycle) {
  // Right nodes are the b/c/d triangles; the a-triangle respects its group.
  auto inst = fixtures::tight_onetwo();
  auto f = make_special(inst, CycleCover{{{{0, 1, 2}, false}, {{3, 5, 7}, false}, {{4, 6, 8}, false}}, false});
  auto b = build_B(inst, f);
  ASSERT_EQ(b.right_cycle.size(), 2u);
  EXPECT_EQ(max_cardinality_matching(b.graph).size(), 2);
  bool path_seen = false;
  for (const auto& m : all_maximum_matchings(b)) {
    auto d = build_D_and_Dprime(inst, f, b, m);
    for (const auto& c : d.components) path_seen = path_seen || c.shape == ComponentShape::path;
  }
  EXPECT_TRUE(path_seen);
}

// Two unit triangles and a unit pair 2-cycle, with a Hamiltonian cycle of
// weight-one edges. Joining all three along a length-2 path ending at the
// 2-cycle can cost 10 against an optimum of 8.
Instance pair_end_instance() {
  const std::vector<std::vector<std::int64_t>> w = {
      {0, 1, 1, 2, 1, 2, 1, 1}, {1, 0, 2, 2, 1, 1, 1, 2}, {1, 2, 0, 1, 2, 1, 2, 2}, {2, 2, 1, 0, 1, 2, 2, 2},
      {1, 1, 2, 1, 0, 1, 1, 1}, {2, 1, 1, 2, 1, 0, 2, 2}, {1, 1, 2, 2, 1, 2, 0, 1}, {1, 2, 2, 2, 1, 2, 1, 0}};
  return make_instance(w, {{1, 5}, {2, 3}, {4, 7}, {0, 6}}, WeightClass::one_two);
}

TEST(OneTwo, PathEndingAtPairCycleBreaksTheBound) {
  auto inst = pair_end_instance();
  ASSERT_EQ(brute_force_smc(inst).cost, 8);
  auto f = make_special(inst, CycleCover{{{{0, 6, 7}, false}, {{1, 4, 5}, false}, {{2, 3}, true}}, false});
  AttachmentDigraph d;
  d.out = {AttachmentArc{0, 1, 1}, AttachmentArc{1, 2, 3}, std::nullopt};
  d.components = {{ComponentShape::path, {0, 1, 2}}};
  auto joined = join_component_cycles(inst, f, d, TieBreak::adversarial);
  EXPECT_EQ(cover_cost(inst, to_cover(joined)), 10);
  EXPECT_TRUE(dprime_violation(f, d).has_value());

  // The decomposition keeps the 2-cycle apart and the worst run stays in bound.
  auto b = build_B(inst, f);
  for (const auto& m : all_maximum_matchings(b)) {
    auto dd = build_D_and_Dprime(inst, f, b, m);
    for (const auto& c : dd.components)
      if (c.shape == ComponentShape::path) EXPECT_GE(f.cover.cycles[c.nodes[2]].size(), 3);
  }
  auto c = approx_onetwo(inst, OneTwoVariant::ratio_11_9, TieBreak::adversarial);
  EXPECT_LE(9 * cover_cost(inst, c), 11 * 8);
}

TEST(OneTwo, NonpureRootChargesAHeavyVertex) {
  // Nonpure triangle 0 1 4 (edge 0-1 weighs 2) and pure triangle 2 3 5
  // attached at 4; both neighbours of 4 touch the heavy edge.
  std::vector<std::vector<std::int64_t>> w(6, std::vector<std::int64_t>(6, 2));
  auto one = [&](int u, int v) { w[u][v] = w[v][u] = 1; };
  one(1, 4), one(4, 0), one(2, 3), one(3, 5), one(5, 2), one(4, 2);
  for (int v = 0; v < 6; ++v) w[v][v] = 0;
  auto inst = make_instance(w, {{0, 1, 2}, {3, 4, 5}}, WeightClass::one_two);
  OneTwoTrace t;
  auto c = approx_onetwo(inst, OneTwoVariant::ratio_11_9, TieBreak::lex, &t);
  ASSERT_TRUE(validate_solution(inst, c).ok());
  EXPECT_EQ(t.special.nonpure, 0);
  EXPECT_EQ(t.phase1_log.virtual_delta, 1);
  EXPECT_EQ(t.strict_pool, 4);
  EXPECT_FALSE(t.phase1_strict);
  EXPECT_TRUE(t.phase1_audit);
  EXPECT_TRUE(t.chain_bound);
  EXPECT_LE(9 * cover_cost(inst, c), 11 * brute_force_smc(inst).cost);
}

TEST(OneTwo, RatioAgainstOracle) {
  int audit_misses = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const int n = 3 + static_cast<int>(seed % 8);
    auto inst = random_onetwo(n, seed + 3000);
    const auto opt = brute_force_smc(inst);
    for (TieBreak tb : {TieBreak::lex, TieBreak::adversarial}) {
      if (tb == TieBreak::adversarial && n > 8) continue;
      OneTwoTrace t;
      auto c = approx_onetwo(inst, OneTwoVariant::ratio_11_9, tb, &t);
      ASSERT_TRUE(validate_solution(inst, c).ok()) << seed;
      const Weight cost = cover_cost(inst, c);
      EXPECT_LE(9 * cost, 11 * opt.cost) << "seed " << seed;
      EXPECT_TRUE(t.chain_bound) << "seed " << seed;
      EXPECT_LE(t.c_p, count_heavy_edges(inst, opt.cover)) << "seed " << seed;
      EXPECT_LE(t.phase2_log.virtual_delta, t.c_p);
      EXPECT_TRUE(t.phase1_audit) << "seed " << seed;
      audit_misses += !t.phase1_strict;
    }
  }
  RecordProperty("phase1_strict_misses", audit_misses);
}

TEST(OneTwo, SevenSixthsVariant) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = seed % 2 ? 12 : 8;
    auto inst = random_onetwo(n, seed + 4000, 4);
    OneTwoTrace t;
    auto c = approx_onetwo(inst, OneTwoVariant::ratio_7_6, TieBreak::lex, &t);
    ASSERT_TRUE(validate_solution(inst, c).ok()) << seed;
    EXPECT_FALSE(has_triangle(t.special.cover));
    const Weight opt = brute_force_smc(inst).cost;
    EXPECT_LE(6 * cover_cost(inst, c), 7 * opt) << "seed " << seed;
    EXPECT_TRUE(t.chain_bound) << "seed " << seed;
    EXPECT_TRUE(t.phase1_audit) << "seed " << seed;
  }
}

TEST(OneTwo, SevenSixthsRejectsSmallGroups) {
  auto inst = all_ones(8, {{0, 1, 2}, {3, 4, 5, 6, 7}});
  EXPECT_THROW(approx_onetwo(inst, OneTwoVariant::ratio_7_6), PreconditionError);
  auto metric = generate_instance(InstanceKind::euclidean, 6, {6}, 1);
  EXPECT_THROW(approx_onetwo(metric, OneTwoVariant::ratio_11_9), PreconditionError);
}

}  // namespace
}  // namespace smc
