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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ctforge/error.hpp"
#include "ctforge/model/sut.hpp"
#include "ctforge/sat/solver.hpp"

namespace ctforge {

// Variable map plus clauses for a SutModel.
//
// Variables are dense and laid out as: parameters in declaration order (one
// variable per value for enum/int parameters, a single variable for bool
// parameters), then auxiliaries, then Tseitin definition variables.
class CnfEncoding {
 public:
  const sat::CnfFormula& formula() const { return formula_; }
  sat::Var n_vars() const { return formula_.n_vars; }
  std::size_t n_params() const { return first_var_.size(); }

  bool direct(std::size_t param) const { return direct_[param]; }
  // First SAT variable of parameter p.
  sat::Var param_var(std::size_t p) const { return first_var_[p]; }
  sat::Var aux_var(std::size_t a) const { return aux_first_ + static_cast<sat::Var>(a); }
  // Variables that belong to parameters (not auxiliaries or definitions).
  sat::Var n_param_vars() const { return aux_first_ - 1; }

  sat::Lit literal(std::size_t p, std::size_t v) const {
    if (direct_[p]) return sat::Lit(first_var_[p], v == 0);
    return sat::Lit::pos(first_var_[p] + static_cast<sat::Var>(v));
  }
  sat::Lit literal(const ParamValue& pv) const { return literal(pv.param, pv.value); }

  std::vector<sat::Lit> literals(const ValueTuple& tuple) const {
    std::vector<sat::Lit> out;
    out.reserve(tuple.size());
    for (const auto& pv : tuple) out.push_back(literal(pv));
    return out;
  }

  // Literals for every fixed cell of a (possibly partial) test.
  std::vector<sat::Lit> literals(const TestCase& test) const {
    std::vector<sat::Lit> out;
    for (std::size_t p = 0; p < test.cells.size(); ++p) {
      if (test.cells[p] != kEmpty) out.push_back(literal(p, static_cast<std::size_t>(test.cells[p])));
    }
    return out;
  }

  // Projects a model of the encoding onto the parameters.
  TestCase decode(const sat::Assignment& model) const {
    TestCase t(n_params());
    for (std::size_t p = 0; p < n_params(); ++p) {
      if (direct_[p]) {
        t.cells[p] = model.value(first_var_[p]) == sat::Value::True ? 1 : 0;
        continue;
      }
      for (std::size_t v = 0; v < domain_[p]; ++v) {
        if (model.is_true(literal(p, v))) {
          t.cells[p] = static_cast<std::int32_t>(v);
          break;
        }
      }
    }
    return t;
  }

  // Completes the kEmpty cells of `test` from a solver model.
  void fill_from(TestCase& test, const sat::Assignment& model) const {
    TestCase full = decode(model);
    for (std::size_t p = 0; p < test.cells.size(); ++p) {
      if (test.cells[p] == kEmpty) test.cells[p] = full.cells[p];
    }
  }

  friend CnfEncoding encode(const SutModel& model);

 private:
  sat::Var fresh() { return ++formula_.n_vars; }

  sat::Lit atom_literal(const Expr& e) const {
    switch (e.kind) {
      case ExprKind::Eq: return literal(e.param, e.value);
      case ExprKind::Neq: return ~literal(e.param, e.value);
      default: return e.positive ? sat::Lit::pos(aux_var(e.aux)) : sat::Lit::neg(aux_var(e.aux));
    }
  }

  // Plaisted-Greenbaum: definitions only carry the positive-polarity half.
  sat::Lit define(const Expr& nnf) {
    if (nnf.is_atom()) return atom_literal(nnf);
    std::vector<sat::Lit> kids;
    kids.reserve(nnf.children.size());
    for (const Expr& c : nnf.children) kids.push_back(define(c));
    sat::Lit d = sat::Lit::pos(fresh());
    if (nnf.kind == ExprKind::And) {
      for (sat::Lit k : kids) formula_.clauses.push_back({~d, k});
    } else {
      sat::Clause c{~d};
      c.insert(c.end(), kids.begin(), kids.end());
      formula_.clauses.push_back(std::move(c));
    }
    return d;
  }

  void assert_top(const Expr& nnf) {
    if (nnf.kind == ExprKind::And) {
      for (const Expr& c : nnf.children) assert_top(c);
      return;
    }
    if (nnf.kind == ExprKind::Or) {
      sat::Clause c;
      for (const Expr& k : nnf.children) c.push_back(define(k));
      formula_.clauses.push_back(std::move(c));
      return;
    }
    formula_.clauses.push_back({atom_literal(nnf)});
  }

  sat::CnfFormula formula_;
  std::vector<sat::Var> first_var_;
  std::vector<std::size_t> domain_;
  std::vector<bool> direct_;
  sat::Var aux_first_ = 1;
};

// Builds the encoding without checking satisfiability.
inline CnfEncoding encode(const SutModel& model) {
  model.validate();
  CnfEncoding enc;
  sat::Var next = 1;
  for (const auto& p : model.parameters) {
    enc.first_var_.push_back(next);
    enc.domain_.push_back(p.domain_size());
    const bool direct = p.kind == ParamKind::Bool;
    enc.direct_.push_back(direct);
    next += direct ? 1 : static_cast<sat::Var>(p.domain_size());
  }
  enc.aux_first_ = next;
  enc.formula_.n_vars = next - 1 + static_cast<sat::Var>(model.aux_vars.size());

  for (std::size_t p = 0; p < model.parameters.size(); ++p) {
    if (enc.direct_[p]) continue;
    const std::size_t g = enc.domain_[p];
    sat::Clause at_least_one;
    for (std::size_t v = 0; v < g; ++v) at_least_one.push_back(enc.literal(p, v));
    enc.formula_.clauses.push_back(std::move(at_least_one));
    for (std::size_t a = 0; a < g; ++a) {
      for (std::size_t b = a + 1; b < g; ++b) {
        enc.formula_.clauses.push_back({~enc.literal(p, a), ~enc.literal(p, b)});
      }
    }
  }
  for (const Expr& c : model.constraints) enc.assert_top(to_nnf(c));
  return enc;
}

// Encodes the model and checks that it accepts at least one test case.
inline CnfEncoding compile(const SutModel& model) {
  CnfEncoding enc = encode(model);
  sat::Solver solver(enc.formula());
  auto r = solver.solve();
  if (r.status == sat::Status::Unsat) throw ModelUnsatisfiable();
  if (r.status != sat::Status::Sat) throw EngineFailure("satisfiability check did not finish");
  return enc;
}

}  // namespace ctforge
