// Copyright 2026 The ctforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ctforge/model/encoding.hpp"
#include "ctforge/model/tuples.hpp"
#include "fixtures.hpp"
#include "model_gen.hpp"
#include "oracles.hpp"

namespace ctforge {
namespace {

using testing::example1;

enum { OS, Pl, Re, Or };

TEST(Encoding, Example1HasOneVariablePerValue) {
  SutModel m = example1();
  m.constraints.clear();
  auto enc = encode(m);
  EXPECT_EQ(enc.n_param_vars(), 15U);
  EXPECT_EQ(enc.n_vars(), 15U);
  // at-least-one plus pairwise at-most-one per parameter
  EXPECT_EQ(enc.formula().clauses.size(), (1U + 10) + (1 + 6) + (1 + 6) + (1 + 1));
}

TEST(Encoding, BoolParameterUsesOneVariable) {
  SutModel m;
  m.parameters = {{"B", {"false", "true"}, ParamKind::Bool}};
  auto enc = encode(m);
  EXPECT_EQ(enc.n_vars(), 1U);
  EXPECT_TRUE(enc.formula().clauses.empty());
  EXPECT_NE(enc.literal(0, 0), enc.literal(0, 1));
  EXPECT_EQ(enc.literal(0, 0), ~enc.literal(0, 1));
}

TEST(Encoding, ContradictoryModelIsRejected) {
  SutModel m;
  m.parameters = {{"B", {"false", "true"}, ParamKind::Bool}, {"C", {"x", "y"}, ParamKind::Enum}};
  m.constraints = {Expr::eq(0, 1), Expr::implies(Expr::eq(0, 1), Expr::eq(1, 0)), Expr::eq(1, 1)};
  EXPECT_THROW(compile(m), ModelUnsatisfiable);
}

TEST(Encoding, UnknownReferenceIsAModelError) {
  SutModel m = example1();
  m.constraints.push_back(Expr::eq(7, 0));
  EXPECT_THROW(encode(m), ModelError);
  m = example1();
  m.constraints.push_back(Expr::aux_ref(0));
  EXPECT_THROW(encode(m), ModelError);
}

// The projection of the encoding's models onto the parameters is exactly the
// set of test cases accepted by direct evaluation of the constraint trees.
TEST(EncodingProperty, AgreesWithDirectEvaluation) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 300; ++iter) {
    SutModel m = testing::random_model(rng);
    auto expected = testing::valid_tests(m);
    auto enc = encode(m);
    sat::Solver solver(enc.formula());
    std::set<std::vector<std::int32_t>> got;
    testing::for_each_assignment(m, [&](const auto& values, const auto& aux) {
      bool first_aux = std::none_of(aux.begin(), aux.end(), [](char c) { return c != 0; });
      if (!first_aux) return;
      TestCase t{values};
      auto r = solver.solve(enc.literals(t));
      ASSERT_NE(r.status, sat::Status::BudgetExhausted);
      if (r.sat()) {
        got.insert(values);
        ASSERT_EQ(enc.decode(*r.model).cells, values);
      }
    });
    ASSERT_EQ(got, expected) << "iteration " << iter;
    auto r = solver.solve();
    if (r.sat()) {
      EXPECT_TRUE(expected.count(enc.decode(*r.model).cells));
    }
  }
}

TEST(Tuples, Example1PairCount) {
  auto m = example1();
  EXPECT_EQ(count_tuples(m, 2), 82U);
  EXPECT_EQ(count_tuples(m, 2), testing::all_tuples(m, 2).size());
}

TEST(Tuples, ThreeBooleansAtStrengthTwo) {
  SutModel m;
  for (const char* n : {"A", "B", "C"}) m.parameters.push_back({n, {"false", "true"}, ParamKind::Bool});
  EXPECT_EQ(count_tuples(m, 2), 12U);
}

TEST(Tuples, FullStrengthIsTheFactorial) {
  EXPECT_EQ(count_tuples(example1(), 4), 5U * 4 * 4 * 2);
}

TEST(Tuples, StrengthOutOfRange) {
  EXPECT_THROW(TupleSpace({2, 2}, 0), StrengthOutOfRange);
  EXPECT_THROW(TupleSpace({2, 2}, 3), StrengthOutOfRange);
}

TEST(TuplesProperty, IndexIsABijection) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    SutModel m = testing::random_model(rng, {.max_params = 6, .max_domain = 4, .max_aux = 0, .max_constraints = 0});
    std::size_t t = 1 + rng() % m.n_params();
    TupleSpace space(m.domain_sizes(), t);
    auto oracle = testing::all_tuples(m, t);
    ASSERT_EQ(space.size(), oracle.size());
    std::set<testing::PairTuple> seen;
    for (std::uint64_t i = 0; i < space.size(); ++i) {
      auto tuple = space.tuple_at(i);
      ASSERT_EQ(tuple.size(), t);
      ASSERT_EQ(space.index_of(tuple), i);
      seen.insert(testing::to_pairs(tuple));
    }
    ASSERT_EQ(seen, oracle);
  }
}

TEST(TuplesProperty, CombinationRankRoundTrips) {
  TupleSpace space({2, 3, 2, 4, 2, 3, 2}, 3);
  std::vector<std::size_t> c{0, 1, 2};
  std::uint64_t r = 0;
  do {
    ASSERT_EQ(space.rank(c), r);
    ASSERT_EQ(space.unrank(r), c);
    ++r;
  } while (TupleSpace::next_combination(c, 7));
  EXPECT_EQ(r, space.n_combinations());
}

TEST(Covers, PaperTestCase) {
  // (W, F, K, L)
  TestCase test{{1, 0, 0, 1}};
  std::set<testing::PairTuple> expected{
      {{OS, 1}, {Pl, 0}}, {{OS, 1}, {Re, 0}}, {{OS, 1}, {Or, 1}},
      {{Pl, 0}, {Re, 0}}, {{Pl, 0}, {Or, 1}}, {{Re, 0}, {Or, 1}}};
  TupleSpace space(example1().domain_sizes(), 2);
  std::set<testing::PairTuple> got;
  space.for_each_covered(test, [&](std::uint64_t i) {
    auto tuple = space.tuple_at(i);
    EXPECT_TRUE(covers(test, tuple));
    got.insert(testing::to_pairs(tuple));
  });
  EXPECT_EQ(got, expected);
  EXPECT_FALSE(covers(test, ValueTuple{{OS, 0}, {Or, 1}}));
}

TEST(Covers, EmptyCellsCoverNothing) {
  TestCase test(4);
  test.cells[OS] = 1;
  test.cells[Re] = 0;
  TupleSpace space(example1().domain_sizes(), 2);
  int n = 0;
  space.for_each_covered(test, [&](std::uint64_t) { ++n; });
  EXPECT_EQ(n, 1);
  EXPECT_FALSE(covers(test, ValueTuple{{OS, 1}, {Pl, 0}}));
}

TEST(ValueTupleTest, RejectsRepeatedParameter) {
  EXPECT_THROW((ValueTuple{{OS, 1}, {OS, 2}}), ModelError);
  ValueTuple t{{Re, 0}, {OS, 3}};
  EXPECT_EQ(t.pairs().front().param, static_cast<std::size_t>(OS));
}

TEST(Allowed, ForbiddenPairsOfExample1) {
  auto m = example1();
  auto enc = compile(m);
  sat::Solver solver(enc.formula());
  EXPECT_FALSE(is_allowed(ValueTuple{{OS, 3}, {Re, 0}}, enc, solver));
  EXPECT_FALSE(is_allowed(ValueTuple{{Pl, 3}, {Re, 0}}, enc, solver));
  EXPECT_TRUE(is_allowed(ValueTuple{{OS, 1}, {Re, 0}}, enc, solver));
}

TEST(Allowed, Example1HasSixtyNineAllowedPairs) {
  auto m = example1();
  auto enc = compile(m);
  sat::Solver solver(enc.formula());
  std::set<testing::PairTuple> allowed;
  for (const auto& tuple : enumerate_tuples(m, 2)) {
    if (is_allowed(tuple, enc, solver)) allowed.insert(testing::to_pairs(tuple));
  }
  EXPECT_EQ(allowed.size(), 69U);
  EXPECT_EQ(allowed, testing::allowed_tuples(m, 2));
}

TEST(AllowedProperty, MatchesBruteForce) {
  std::mt19937_64 rng(21);
  for (int iter = 0; iter < 200; ++iter) {
    SutModel m = testing::random_model(rng);
    if (testing::valid_tests(m).empty()) continue;
    std::size_t t = 1 + rng() % std::min<std::size_t>(m.n_params(), 3);
    auto enc = compile(m);
    sat::Solver solver(enc.formula());
    std::set<testing::PairTuple> got;
    for (const auto& tuple : enumerate_tuples(m, t)) {
      if (is_allowed(tuple, enc, solver)) got.insert(testing::to_pairs(tuple));
    }
    ASSERT_EQ(got, testing::allowed_tuples(m, t)) << "iteration " << iter;
  }
}

TEST(Fingerprint, StableAndSensitive) {
  auto a = example1();
  auto b = example1();
  EXPECT_EQ(fingerprint(a), fingerprint(b));
  b.parameters[Or].values[0] = "Portrait";
  EXPECT_NE(fingerprint(a), fingerprint(b));
  b = example1();
  b.constraints.pop_back();
  EXPECT_NE(fingerprint(a), fingerprint(b));
}

}  // namespace
}  // namespace ctforge
