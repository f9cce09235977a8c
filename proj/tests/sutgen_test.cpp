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

#include <algorithm>
#include <map>
#include <random>

#include "ctforge/formats/acts.hpp"
#include "ctforge/formats/dimacs.hpp"
#include "ctforge/model/encoding.hpp"
#include "ctforge/sutgen/generator.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace ctforge::sutgen {
namespace {

using sat::Lit;

sat::CnfFormula cnf(sat::Var n, std::vector<std::vector<int>> clauses) {
  sat::CnfFormula f;
  f.n_vars = n;
  for (const auto& c : clauses) {
    sat::Clause d;
    for (int x : c) d.push_back(Lit::from_dimacs(x));
    f.clauses.push_back(d);
  }
  return f;
}

sat::CnfFormula bundled() { return formats::parse_dimacs(testing::read_data("random3_100_410.cnf")); }

GenConfig loose(std::size_t n) {
  GenConfig c;
  c.n = n;
  c.c_min = 0;
  c.c_max = 10;
  return c;
}

TEST(SolveSubproblem, UnitFormula) {
  sat::Solver s(cnf(1, {{1}}), GenConfig{}.solver_config());
  std::mt19937_64 rng(0);
  std::vector<std::uint64_t> seeds{1, 2, 3};
  auto m = solve_subproblem(s, {}, seeds, rng);
  ASSERT_TRUE(m.model);
  EXPECT_TRUE(m.model->is_true(Lit::pos(1)));
  EXPECT_EQ(m.conflicts, 0.0);
}

TEST(SolveSubproblem, UnsatisfiableGivesNoModel) {
  sat::Solver s(cnf(1, {{1}, {-1}}), GenConfig{}.solver_config());
  std::mt19937_64 rng(0);
  std::vector<std::uint64_t> seeds{1};
  EXPECT_FALSE(solve_subproblem(s, {}, seeds, rng).model);
}

TEST(SolveSubproblem, ExhaustedBudgetGivesNoModel) {
  GenConfig cfg;
  cfg.query_budget = 1;
  sat::Solver s(bundled(), cfg.solver_config());
  std::mt19937_64 rng(0);
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  EXPECT_FALSE(solve_subproblem(s, {}, seeds, rng).model);
}

TEST(SolveSubproblem, AverageOfPerSeedConflicts) {
  auto f = bundled();
  GenConfig cfg;
  sat::Solver a(f, cfg.solver_config());
  sat::Solver b(f, cfg.solver_config());
  std::mt19937_64 rng(0);
  auto m = solve_subproblem(a, {}, cfg.seeds, rng);
  ASSERT_TRUE(m.model);
  double total = 0;
  for (auto seed : cfg.seeds) {
    b.set_seed(seed);
    auto r = b.solve();
    ASSERT_TRUE(r.sat());
    total += static_cast<double>(r.n_conflicts);
  }
  EXPECT_DOUBLE_EQ(m.conflicts, total / 5);
  EXPECT_GT(m.conflicts, 0.0);
}

TEST(FindSubproblem, UnsatisfiableFails) {
  auto r = find_satisfiable_subproblem(cnf(2, {{1, 2}, {-1}, {-2}}), loose(1));
  EXPECT_FALSE(r.ok());
}

TEST(FindSubproblem, TooFewVariablesFails) {
  auto r = find_satisfiable_subproblem(cnf(3, {{1, 2, 3}}), loose(5));
  EXPECT_FALSE(r.ok());
}

TEST(FindSubproblem, AlreadyInRange) {
  auto f = cnf(4, {{1}, {-1, 2}, {3, 4}});
  auto r = find_satisfiable_subproblem(f, loose(2));
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r.assumptions.empty());
  std::set<Lit> fixed(r.fixed.begin(), r.fixed.end());
  EXPECT_EQ(fixed, (std::set<Lit>{Lit::pos(1), Lit::pos(2)}));
}

TEST(FindSubproblem, TooEasyFormulaFails) {
  GenConfig cfg = loose(2);
  cfg.c_min = 5;
  cfg.c_max = 10;
  auto r = find_satisfiable_subproblem(cnf(3, {{1, 2}, {2, 3}}), cfg);
  EXPECT_FALSE(r.ok());
}

// A hard start forces the loop to add assumptions until the conflict count
// drops into range.
TEST(FindSubproblem, AddsAssumptionsWhenTooHard) {
  GenConfig cfg;
  cfg.n = 10;
  cfg.c_min = 1;
  cfg.c_max = 20;
  auto r = find_satisfiable_subproblem(bundled(), cfg);
  ASSERT_TRUE(r.ok()) << r.reason;
  EXPECT_FALSE(r.assumptions.empty());
  EXPECT_GE(r.conflicts, 1.0);
  EXPECT_LE(r.conflicts, 20.0);
  EXPECT_LE(r.tries, cfg.max_tries);
  for (Lit a : r.assumptions) EXPECT_NE(std::find(r.fixed.begin(), r.fixed.end(), a), r.fixed.end());
}

TEST(FindSubprobleProperty, AssumptionBookkeeping) {
  auto f = bundled();
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    GenConfig cfg;
    cfg.n = 10 + seed * 5;
    cfg.c_min = 2 + seed;
    cfg.c_max = 4 + 3 * seed;
    cfg.delta_a = 3 + seed;
    cfg.nabla_a = 2;
    cfg.max_tries = 30;
    cfg.gen_seed = seed;
    auto r = find_satisfiable_subproblem(f, cfg);
    EXPECT_LE(r.tries, cfg.max_tries);
    for (std::size_t i = 1; i < r.steps.size(); ++i) {
      auto prev = static_cast<long>(r.steps[i - 1].assumptions);
      auto cur = static_cast<long>(r.steps[i].assumptions);
      bool grew = cur > prev && cur - prev <= static_cast<long>(cfg.delta_a);
      bool shrank = prev - cur == std::min<long>(static_cast<long>(cfg.nabla_a), prev);
      EXPECT_TRUE(grew || shrank) << prev << " -> " << cur;
    }
    if (r.ok()) {
      EXPECT_GE(r.conflicts, static_cast<double>(cfg.c_min));
      EXPECT_LE(r.conflicts, static_cast<double>(cfg.c_max));
    }
  }
}

TEST(Simplify, PaperStyleExample) {
  auto f = cnf(4, {{-1, 2}, {3, 4}});
  std::vector<Lit> fixed{Lit::pos(1)};
  auto s = simplify(f, fixed);
  EXPECT_EQ(s.formula.n_vars, 2U);
  ASSERT_EQ(s.formula.clauses.size(), 1U);
  EXPECT_EQ(s.formula.clauses[0], (sat::Clause{Lit::pos(1), Lit::pos(2)}));
  EXPECT_EQ(s.rename[3], 1U);
  EXPECT_EQ(s.rename[4], 2U);
  EXPECT_EQ(s.rename[1], 0U);
  EXPECT_EQ(s.fixed, (std::vector<Lit>{Lit::pos(1), Lit::pos(2)}));
}

TEST(Simplify, UnitsPropagateToAFixpoint) {
  auto f = cnf(5, {{-1, 2}, {-2, 3}, {-3, -4}, {4, 5, 1}});
  std::vector<Lit> fixed{Lit::pos(1)};
  auto s = simplify(f, fixed);
  EXPECT_EQ(s.formula.n_vars, 0U);
  EXPECT_TRUE(s.formula.clauses.empty());
  EXPECT_EQ(s.fixed.size(), 4U);
}

TEST(Simplify, EverythingFixed) {
  auto f = cnf(2, {{1, 2}, {-1, 2}});
  std::vector<Lit> fixed{Lit::pos(1), Lit::pos(2)};
  auto s = simplify(f, fixed);
  EXPECT_EQ(s.formula.n_vars, 0U);
  EXPECT_TRUE(s.formula.clauses.empty());
}

TEST(Simplify, ConflictThrows) {
  std::vector<Lit> fixed{Lit::pos(1)};
  EXPECT_THROW(simplify(cnf(2, {{-1, 2}, {-2}}), fixed), Error);
}

// Models of φ′ are exactly the renamed projections of the models of φ that
// agree with the fixed literals.
TEST(SimplifyProperty, PreservesModels) {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int iter = 0; iter < 400; ++iter) {
    sat::Var n = 4 + static_cast<sat::Var>(rng() % 11);
    auto f = testing::random_kcnf(rng, n, 1 + rng() % (3 * n), 2 + rng() % 2);
    auto models = testing::brute_force_models(f);
    if (models.empty()) continue;
    std::uint64_t some = *models.begin();
    std::vector<Lit> fixed;
    for (sat::Var v = 1; v <= n; ++v) {
      if (rng() % 4 == 0) fixed.emplace_back(v, ((some >> (v - 1)) & 1U) == 0);
    }
    auto s = simplify(f, fixed);
    std::set<std::uint64_t> expected;
    for (auto m : models) {
      bool agrees = std::all_of(s.fixed.begin(), s.fixed.end(), [&](Lit l) { return testing::lit_true(m, l); });
      if (!agrees) continue;
      std::uint64_t proj = 0;
      for (sat::Var v = 1; v <= n; ++v) {
        if (s.rename[v] != 0 && ((m >> (v - 1)) & 1U)) proj |= std::uint64_t{1} << (s.rename[v] - 1);
      }
      expected.insert(proj);
    }
    ASSERT_EQ(testing::brute_force_models(s.formula), expected) << "iteration " << iter;
    for (const auto& c : s.formula.clauses) ASSERT_GE(c.size(), 2U);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Generate, SingleClause) {
  auto r = generate(cnf(2, {{1, 2}}), loose(2));
  ASSERT_TRUE(r.ok()) << r.reason;
  EXPECT_EQ(r.model.n_params(), 2U);
  EXPECT_TRUE(r.model.aux_vars.empty());
  EXPECT_EQ(r.model.constraints.size(), 1U);
  EXPECT_EQ(r.model.parameters[0].name, "p1");
  EXPECT_EQ(r.model.parameters[1].values, (std::vector<std::string>{"0", "1"}));
}

TEST(Generate, UnsatisfiableFails) {
  auto r = generate(cnf(1, {{1}, {-1}}), loose(1));
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.reason.empty());
}

TEST(Generate, InvalidConfig) {
  GenConfig cfg = loose(1);
  cfg.c_min = cfg.c_max;
  EXPECT_THROW(generate(cnf(1, {{1}}), cfg), Error);
  cfg = loose(1);
  cfg.seeds.clear();
  EXPECT_THROW(generate(cnf(1, {{1}}), cfg), Error);
}

GenConfig bundled_config() {
  GenConfig cfg;
  cfg.n = 10;
  cfg.c_min = 50;
  cfg.c_max = 5000;
  return cfg;
}

TEST(Generate, BundledInstance) {
  auto r = generate(bundled(), bundled_config(), "random3_100_410");
  ASSERT_TRUE(r.ok()) << r.reason;
  const SutModel& m = r.model;
  EXPECT_EQ(m.n_params(), 10U);
  for (const auto& p : m.parameters) EXPECT_EQ(p.kind, ParamKind::Bool);
  EXPECT_GE(r.provenance.measured_c, 50.0);
  EXPECT_LE(r.provenance.measured_c, 5000.0);

  auto enc = compile(m);  // throws if unsatisfiable
  sat::Solver solver(enc.formula());
  auto up = solver.propagate();
  ASSERT_FALSE(up.is_conflict());
  for (std::size_t p = 0; p < m.n_params(); ++p) {
    for (Lit l : up.literals()) EXPECT_NE(l.var(), enc.param_var(p));
  }
}

TEST(Generate, Deterministic) {
  auto a = generate(bundled(), bundled_config(), "x");
  auto b = generate(bundled(), bundled_config(), "x");
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(formats::write_extended_acts(a.model), formats::write_extended_acts(b.model));
  EXPECT_EQ(write_provenance(a.provenance), write_provenance(b.provenance));
}

// The emitted file, re-parsed and compiled, yields the clauses of φ′.
TEST(Generate, EmittedModelCompilesToTheSimplifiedFormula) {
  auto r = generate(bundled(), bundled_config(), "x");
  ASSERT_TRUE(r.ok());
  auto back = formats::parse_extended_acts(formats::write_extended_acts(r.model));
  auto enc = encode(back);
  std::map<sat::Var, sat::Var> to_enc;
  for (std::size_t i = 0; i < r.params.size(); ++i) to_enc[r.params[i]] = enc.param_var(i);
  for (std::size_t i = 0; i < r.aux.size(); ++i) to_enc[r.aux[i]] = enc.aux_var(i);
  std::multiset<sat::Clause> expected, got;
  for (const auto& c : r.simplified.clauses) {
    sat::Clause d;
    for (Lit l : c) d.emplace_back(to_enc.at(l.var()), l.negative());
    std::sort(d.begin(), d.end());
    expected.insert(d);
  }
  for (auto c : enc.formula().clauses) {
    std::sort(c.begin(), c.end());
    got.insert(c);
  }
  EXPECT_EQ(got, expected);
  EXPECT_EQ(enc.n_vars(), r.simplified.n_vars);
}

TEST(Generate, ProvenanceSidecar) {
  auto r = generate(cnf(2, {{1, 2}}), loose(2), "tiny.cnf");
  auto text = write_provenance(r.provenance);
  for (const char* key : {"source=tiny.cnf\n", "n=2\n", "c_min=0\n", "c_max=10\n", "measured_c=0\n",
                          "seeds=1,2,3,4,5\n", "gen_seed=0\n", "tries_used=1\n", "assumptions_final=0\n"}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
  EXPECT_NE(text.find("rename=1:p"), std::string::npos);
}

}  // namespace
}  // namespace ctforge::sutgen
