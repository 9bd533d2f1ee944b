#include <gtest/gtest.h>

#include <functional>
#include <numeric>
#include <sstream>

#include "smc/cycle_cover.hpp"
#include "smc/generate.hpp"
#include "smc/io.hpp"

namespace smc {
namespace {

std::vector<std::vector<std::int64_t>> uniform(int n, std::int64_t w) {
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, w));
  for (int i = 0; i < n; ++i) m[i][i] = 0;
  return m;
}

InstanceErrorKind error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InstanceError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no InstanceError raised";
  return InstanceErrorKind::bad_size;
}

TEST(Instance, RejectsOverlappingGroups) {
  EXPECT_EQ(error_of([] { make_instance(uniform(4, 1), {{0, 1}, {1, 2, 3}}, WeightClass::general_metric); }),
            InstanceErrorKind::partition_overlap);
}

TEST(Instance, RejectsUnitGroup) {
  EXPECT_EQ(error_of([] { make_instance(uniform(3, 1), {{0, 1}, {2}}, WeightClass::general_metric); }),
            InstanceErrorKind::unit_group);
}

TEST(Instance, RejectsUncoveredVertex) {
  EXPECT_EQ(error_of([] { make_instance(uniform(3, 1), {{0, 1}}, WeightClass::general_metric); }),
            InstanceErrorKind::partition_incomplete);
}

TEST(Instance, RejectsTriangleViolation) {
  auto w = uniform(3, 1);
  w[0][2] = w[2][0] = 3;
  EXPECT_EQ(error_of([&] { make_instance(w, {{0, 1, 2}}, WeightClass::general_metric); }),
            InstanceErrorKind::triangle_violation);
}

TEST(Instance, RejectsWrongWeightClass) {
  EXPECT_EQ(error_of([] { make_instance(uniform(3, 3), {{0, 1, 2}}, WeightClass::one_two); }),
            InstanceErrorKind::weight_class_violation);
}

TEST(Instance, RejectsAsymmetricWeightsInSymmetricMode) {
  auto w = uniform(3, 2);
  w[0][1] = 1;
  EXPECT_EQ(error_of([&] { make_instance(w, {{0, 1, 2}}, WeightClass::general_metric); }),
            InstanceErrorKind::asymmetric_weights);
}

TEST(Instance, ScalesRationalWeights) {
  RawInstance raw;
  raw.n = 3;
  raw.groups = {{0, 1, 2}};
  raw.weights = {{0, Rational(1, 2), Rational(1, 3)},
                 {Rational(1, 2), 0, Rational(1, 2)},
                 {Rational(1, 3), Rational(1, 2), 0}};
  auto inst = validate_instance(raw);
  EXPECT_EQ(inst.scale(), 6);
  EXPECT_EQ(inst.w(0, 1), 3);
  EXPECT_EQ(inst.w(0, 2), 2);
  CycleCover c{{Cycle{{0, 1, 2}}}, false};
  EXPECT_EQ(cover_cost_exact(inst, c), Rational(4, 3));
}

TEST(CycleCover, CostInvariantUnderRotationAndReversal) {
  auto inst = generate_instance(InstanceKind::euclidean, 7, {3, 4}, 5);
  CycleCover a{{Cycle{{0, 3, 5, 1, 6, 2, 4}}}, false};
  CycleCover b = a;
  std::rotate(b.cycles[0].vertices.begin(), b.cycles[0].vertices.begin() + 3, b.cycles[0].vertices.end());
  CycleCover c = a;
  std::reverse(c.cycles[0].vertices.begin(), c.cycles[0].vertices.end());
  EXPECT_EQ(cover_cost(inst, a), cover_cost(inst, b));
  EXPECT_EQ(cover_cost(inst, a), cover_cost(inst, c));
  EXPECT_EQ(canonical(a), canonical(b));
  EXPECT_EQ(canonical(a), canonical(c));
}

TEST(CycleCover, ValidationFindsEachProblem) {
  auto inst = make_instance(uniform(6, 1), {{0, 1}, {2, 3, 4, 5}}, WeightClass::general_metric);
  CycleCover ok{{Cycle{{0, 1}, true}, Cycle{{2, 3, 4, 5}}}, false};
  EXPECT_TRUE(validate_solution(inst, ok).ok());
  EXPECT_EQ(cover_cost(inst, ok), 6);

  CycleCover unflagged{{Cycle{{0, 1}, false}, Cycle{{2, 3, 4, 5}}}, false};
  EXPECT_EQ(validate_solution(inst, unflagged).violations[0].kind, ViolationKind::illegal_two_cycle);

  CycleCover wrong_pair{{Cycle{{0, 2}, true}, Cycle{{1, 3, 4, 5}}}, false};
  EXPECT_FALSE(check_two_factor(inst, wrong_pair).ok());

  CycleCover split{{Cycle{{0, 1, 2}}, Cycle{{3, 4, 5}}}, false};
  EXPECT_TRUE(check_two_factor(inst, split).ok());
  EXPECT_EQ(validate_solution(inst, split).violations[0].kind, ViolationKind::split_group);

  CycleCover missing{{Cycle{{0, 1, 2, 3, 4}}}, false};
  EXPECT_EQ(validate_solution(inst, missing).violations[0].kind, ViolationKind::uncovered_vertex);
  EXPECT_THROW(cover_cost(inst, missing), PreconditionError);

  CycleCover repeated{{Cycle{{0, 1, 2, 3, 4, 5, 0}}}, false};
  EXPECT_EQ(validate_solution(inst, repeated).violations[0].kind, ViolationKind::repeated_vertex);
}

TEST(CycleCover, DirectedTwoCyclesAreLegal) {
  auto w = uniform(4, 3);
  auto inst = make_instance(w, {{0, 1, 2, 3}}, WeightClass::asymmetric_metric, false);
  CycleCover c{{Cycle{{0, 1}}, Cycle{{2, 3}}}, true};
  EXPECT_TRUE(check_two_factor(inst, c).ok());
  EXPECT_FALSE(validate_solution(inst, c).ok());
}

TEST(CycleCover, HeavyEdgeCount) {
  auto w = uniform(4, 2);
  w[0][1] = w[1][0] = 1;
  auto inst = make_instance(w, {{0, 1, 2, 3}}, WeightClass::one_two);
  CycleCover c{{Cycle{{0, 1, 2, 3}}}, false};
  EXPECT_EQ(count_heavy_edges(inst, c), 3);
  EXPECT_EQ(cover_cost(inst, c), 4 + 3);
}

TEST(Io, InstanceRoundTripIsExact) {
  for (auto kind : {InstanceKind::euclidean, InstanceKind::one_two, InstanceKind::asymmetric}) {
    auto inst = generate_instance(kind, 8, {2, 3, 3}, 99);
    std::stringstream a;
    write_instance(a, inst);
    auto back = read_instance(a);
    std::stringstream b;
    write_instance(b, back);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(back.raw().weights, inst.raw().weights);
    EXPECT_EQ(back.groups(), inst.groups());
  }
}

TEST(Io, RationalWeightsSurvive) {
  std::string text =
      "smc 1\nn 3\nmode symmetric\nclass metric\ngroups 1\n0 1 2\n0 1/2 2/3\n1/2 0 1\n2/3 1 0\n";
  std::stringstream in(text);
  auto inst = read_instance(in);
  std::stringstream out;
  write_instance(out, inst);
  EXPECT_EQ(out.str(), text);
  EXPECT_EQ(inst.scale(), 6);
}

TEST(Io, ParseErrorsCarryLineNumbers) {
  std::stringstream in("smc 1\nn 3\nmode sideways\n");
  try {
    read_instance(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Io, SolutionRoundTrip) {
  CycleCover c{{Cycle{{4, 5}, true}, Cycle{{0, 2, 1, 3}}}, false};
  std::stringstream s;
  write_solution(s, c);
  EXPECT_EQ(s.str(), "4 5 pair\n0 2 1 3\n");
  EXPECT_EQ(read_solution(s, false), c);
}

TEST(Generate, DeterministicAndValid) {
  auto a = generate_instance(InstanceKind::asymmetric, 9, {4, 5}, 7);
  auto b = generate_instance(InstanceKind::asymmetric, 9, {4, 5}, 7);
  auto c = generate_instance(InstanceKind::asymmetric, 9, {4, 5}, 8);
  EXPECT_EQ(a.raw().weights, b.raw().weights);
  EXPECT_EQ(a.groups(), b.groups());
  EXPECT_NE(a.raw().weights, c.raw().weights);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_NO_THROW(generate_instance(InstanceKind::euclidean, 10, {5, 5}, seed));
    auto ot = generate_instance(InstanceKind::one_two, 6, {6}, seed);
    EXPECT_EQ(ot.weight_class(), WeightClass::one_two);
  }
  EXPECT_THROW(generate_instance(InstanceKind::euclidean, 5, {2, 2}, 1), PreconditionError);
  EXPECT_THROW(generate_instance(InstanceKind::euclidean, 5, {1, 4}, 1), PreconditionError);
}

TEST(Generate, GroupSizeParsing) {
  EXPECT_EQ(parse_group_sizes("3,6"), (std::vector<int>{3, 6}));
  EXPECT_THROW(parse_group_sizes("3,x"), PreconditionError);
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto sizes = random_group_sizes(11, s);
    EXPECT_EQ(std::accumulate(sizes.begin(), sizes.end(), 0), 11);
    for (int x : sizes) EXPECT_GE(x, 2);
  }
}

}  // namespace
}  // namespace smc
