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

#include "ctforge/formats/acts.hpp"
#include "ctforge/mcac/bot.hpp"
#include "ctforge/mcac/ipog.hpp"
#include "ctforge/verify/verifier.hpp"
#include "fixtures.hpp"
#include "model_gen.hpp"
#include "oracles.hpp"

namespace ctforge::mcac {
namespace {

using testing::example1;

SutModel booleans(std::size_t n) {
  SutModel m;
  for (std::size_t i = 0; i < n; ++i) m.parameters.push_back({"b" + std::to_string(i), {"0", "1"}, ParamKind::Bool});
  return m;
}

std::set<testing::PairTuple> covered(const TestSuite& s, std::size_t n, std::size_t t) {
  std::set<testing::PairTuple> out;
  for (const auto& test : s.tests) {
    for (const auto& ps : testing::subsets(n, t)) out.insert(testing::project(test.cells, ps));
  }
  return out;
}

// Valid MCAC whose covered tuples are exactly the allowed ones.
void expect_exact_mcac(const SutModel& m, std::size_t t, const TestSuite& s) {
  auto rep = verify::verify_mcac(m, t, s);
  EXPECT_TRUE(rep.valid()) << verify::to_string(rep, m);
  EXPECT_EQ(covered(s, m.n_params(), t), testing::allowed_tuples(m, t));
  for (const auto& test : s.tests) EXPECT_TRUE(test.complete());
}

// ---- IPOG ----

TEST(Ipog, Example1) {
  auto s = build_ipog(example1(), 2);
  expect_exact_mcac(example1(), 2, s);
  EXPECT_GE(s.size(), 21U);
  EXPECT_LE(s.size(), 30U);
  EXPECT_EQ(s.meta.algorithm, "ipog");
  EXPECT_EQ(s.meta.strength, 2U);
}

TEST(Ipog, TwoUnconstrainedParameters) {
  SutModel m;
  m.parameters = {{"A", {"0", "1", "2", "3", "4"}}, {"B", {"0", "1", "2", "3"}}};
  EXPECT_EQ(build_ipog(m, 2).size(), 20U);
}

TEST(Ipog, ThreeBooleans) {
  auto s = build_ipog(booleans(3), 2);
  expect_exact_mcac(booleans(3), 2, s);
  EXPECT_GE(s.size(), 4U);
  EXPECT_LE(s.size(), 8U);
}

TEST(Ipog, Errors) {
  EXPECT_THROW(build_ipog(example1(), 5), StrengthOutOfRange);
  EXPECT_THROW(build_ipog(example1(), 0), StrengthOutOfRange);
  auto m = booleans(2);
  m.constraints = {Expr::eq(0, 1), Expr::eq(0, 0)};
  EXPECT_THROW(build_ipog(m, 2), ModelUnsatisfiable);
}

TEST(Ipog, Deterministic) {
  for (std::uint64_t seed : {0, 7}) {
    auto a = build_ipog(example1(), 2, {seed});
    auto b = build_ipog(example1(), 2, {seed});
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.tests[i].cells, b.tests[i].cells);
    expect_exact_mcac(example1(), 2, a);
  }
}

TEST(Ipog, InitialSuiteSizeIsALowerBound) {
  // OS and Pl come first: 5 * 4 pairs minus the forbidden (L|W|M, A) ones.
  auto m = example1();
  BuildStats stats;
  auto s = build_ipog(m, 2, {}, &stats);
  EXPECT_GE(s.size(), 17U);
}

TEST(IpogChooseBestValue, TiesAndEmpties) {
  auto m = booleans(2);
  m.parameters.push_back({"c", {"x", "y", "z"}});
  BuildStats stats;
  detail::IpogBuilder builder(m, 2, {}, stats);
  TestCase test{{1, 0, kEmpty}};
  std::vector<std::uint64_t> gains{3, 3, 1};
  EXPECT_EQ(builder.choose_best_value(test, 2, gains), 0);
  gains = {0, 0, 0};
  EXPECT_EQ(builder.choose_best_value(test, 2, gains), kEmpty);
  EXPECT_EQ(test.cells[2], kEmpty);
  gains = {1, 2, 2};
  EXPECT_EQ(builder.choose_best_value(test, 2, gains), 1);
}

TEST(IpogChooseBestValue, SkipsInconsistentValues) {
  auto m = booleans(2);
  m.parameters.push_back({"c", {"x", "y", "z"}});
  m.constraints = {Expr::implies(Expr::eq(0, 1), Expr::neq(2, 0))};
  BuildStats stats;
  detail::IpogBuilder builder(m, 2, {}, stats);
  TestCase test{{1, 0, kEmpty}};
  std::vector<std::uint64_t> gains{3, 0, 1};
  EXPECT_EQ(builder.choose_best_value(test, 2, gains), 2);
  gains = {3, 0, 0};
  EXPECT_EQ(builder.choose_best_value(test, 2, gains), kEmpty);
}

// ---- BOT / PBOT ----

TEST(Bot, Example1) {
  BuildStats stats;
  auto s = build_bot(example1(), 2, {}, &stats);
  expect_exact_mcac(example1(), 2, s);
  EXPECT_GE(s.size(), 21U);
  EXPECT_LE(s.size(), 30U);
  EXPECT_GT(stats.forbidden_tuples, 0U);
  EXPECT_EQ(s.meta.algorithm, "bot");
}

TEST(Bot, ThreeBooleans) {
  BuildStats stats;
  auto s = build_bot(booleans(3), 2, {}, &stats);
  expect_exact_mcac(booleans(3), 2, s);
  EXPECT_GE(s.size(), 4U);
  EXPECT_LE(s.size(), 8U);
  EXPECT_EQ(stats.amendments, 0U);
}

TEST(Bot, SingleValueParameters) {
  SutModel m;
  m.parameters = {{"A", {"a"}}, {"B", {"b"}}};
  EXPECT_EQ(build_bot(m, 2).size(), 1U);
}

TEST(Bot, UnconstrainedNeverAmends) {
  auto m = example1();
  m.constraints.clear();
  BuildStats stats;
  auto s = build_bot(m, 3, {}, &stats);
  expect_exact_mcac(m, 3, s);
  EXPECT_EQ(stats.amendments, 0U);
  EXPECT_EQ(stats.forbidden_tuples, 0U);
  EXPECT_EQ(stats.budget_exhausted, 0U);
}

// x = y = z = "on" is forbidden only through the auxiliary. With a one-conflict
// budget the greedy fix of z goes through and the amendment has to release it.
TEST(Bot, AmendmentReleasesTheLastFix) {
  auto m = formats::parse_extended_acts(
      "[Parameter]\nx (enum) : on,off\ny (enum) : on,off\nz (enum) : on,off\n[Auxiliar]\na1 (bool)\n"
      "[Constraint]\n(x = \"on\" && y = \"on\" && z = \"on\") => a1\n"
      "(x = \"on\" && y = \"on\" && z = \"on\") => !a1\n");
  BuildStats stats;
  BotConfig cfg;
  cfg.cb = 1;
  std::vector<TestCase> streamed;
  auto s = build_bot(m, 2, cfg, &stats, [&](const TestCase& t) { streamed.push_back(t); });
  expect_exact_mcac(m, 2, s);
  EXPECT_EQ(stats.amendments, 1U);
  ASSERT_FALSE(s.tests.empty());
  EXPECT_EQ(s.tests[0].cells, (std::vector<std::int32_t>{0, 0, 1}));

  BuildStats exact;
  cfg.cb = 1'000'000;
  expect_exact_mcac(m, 2, build_bot(m, 2, cfg, &exact));
  EXPECT_EQ(exact.amendments, 0U);
}

TEST(Bot, StreamsTestsInOrder) {
  std::vector<TestCase> streamed;
  auto s = build_bot(example1(), 2, {}, nullptr, [&](const TestCase& t) { streamed.push_back(t); });
  ASSERT_EQ(streamed.size(), s.size());
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(streamed[i].cells, s.tests[i].cells);
}

TEST(Bot, Deterministic) {
  BotConfig cfg;
  cfg.seed = 3;
  auto a = build_bot(example1(), 2, cfg);
  auto b = build_bot(example1(), 2, cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.tests[i].cells, b.tests[i].cells);
}

TEST(Pbot, LargeBudgetMatchesBot) {
  BotConfig cfg;
  cfg.seed = 5;
  auto bot = build_bot(example1(), 2, cfg);
  cfg.pool_budget = 82;
  BuildStats stats;
  auto pbot = build_pbot(example1(), 2, cfg, &stats);
  EXPECT_EQ(stats.slices, 1U);
  ASSERT_EQ(pbot.size(), bot.size());
  for (std::size_t i = 0; i < bot.size(); ++i) EXPECT_EQ(pbot.tests[i].cells, bot.tests[i].cells);
}

TEST(Pbot, SlicedPoolStaysValidAndBounded) {
  for (std::uint64_t budget : {41U, 20U, 7U, 1U}) {
    BotConfig cfg;
    cfg.pool_budget = budget;
    BuildStats stats;
    auto s = build_pbot(example1(), 2, cfg, &stats);
    expect_exact_mcac(example1(), 2, s);
    EXPECT_GE(stats.slices, 2U);
    EXPECT_LE(stats.peak_pool_bytes, budget);
    EXPECT_GE(s.size(), 21U);
  }
}

TEST(Pbot, ZeroBudgetIsRejected) {
  BotConfig cfg;
  cfg.pool_budget = 0;
  EXPECT_THROW(build_pbot(example1(), 2, cfg), Error);
}

// ---- properties over random models ----

struct Case {
  SutModel model;
  std::size_t t;
};

std::vector<Case> random_cases(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<Case> out;
  while (static_cast<int>(out.size()) < count) {
    auto m = testing::random_model(rng, {.max_params = 6, .max_domain = 4, .max_aux = 2, .max_constraints = 5,
                                         .max_depth = 2});
    if (m.n_params() < 2 || testing::valid_tests(m).empty()) continue;
    std::size_t t = 2 + rng() % 2;
    if (t > m.n_params()) t = 2;
    out.push_back({std::move(m), t});
  }
  return out;
}

TEST(BuildersProperty, OutputsAreExactMcacs) {
  for (const auto& c : random_cases(77, 40)) {
    SCOPED_TRACE(formats::write_extended_acts(c.model) + "t=" + std::to_string(c.t));
    expect_exact_mcac(c.model, c.t, build_ipog(c.model, c.t, {3}));
    BotConfig cfg;
    cfg.seed = 3;
    expect_exact_mcac(c.model, c.t, build_bot(c.model, c.t, cfg));
    cfg.pool_budget = (count_tuples(c.model, c.t) + 1) / 2;
    expect_exact_mcac(c.model, c.t, build_pbot(c.model, c.t, cfg));
    if (HasFailure()) return;
  }
}

TEST(BuildersProperty, UnlimitedBudgetNeedsNoAmendment) {
  for (const auto& c : random_cases(78, 30)) {
    BotConfig cfg;
    cfg.cb = 100'000'000;
    BuildStats stats;
    build_bot(c.model, c.t, cfg, &stats);
    EXPECT_EQ(stats.amendments, 0U);
    EXPECT_EQ(stats.budget_exhausted, 0U);
  }
}

TEST(BuildersProperty, SuiteIsAtLeastTheLargestProjection) {
  for (const auto& c : random_cases(79, 30)) {
    auto allowed = testing::allowed_tuples(c.model, c.t);
    std::map<std::vector<std::size_t>, std::size_t> per_subset;
    for (const auto& tuple : allowed) {
      std::vector<std::size_t> ps;
      for (const auto& [p, v] : tuple) ps.push_back(p);
      ++per_subset[ps];
    }
    std::size_t bound = 0;
    for (const auto& [ps, n] : per_subset) bound = std::max(bound, n);
    EXPECT_GE(build_ipog(c.model, c.t).size(), bound);
    EXPECT_GE(build_bot(c.model, c.t).size(), bound);
  }
}

}  // namespace
}  // namespace ctforge::mcac
