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

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <vector>

namespace ctforge::sat {

// Variables are 1-based, as in DIMACS.
using Var = std::uint32_t;

class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(Var var, bool negative) : code_((var << 1) | static_cast<std::uint32_t>(negative)) {}

  static constexpr Lit pos(Var var) { return Lit(var, false); }
  static constexpr Lit neg(Var var) { return Lit(var, true); }
  static constexpr Lit from_dimacs(int value) {
    return value < 0 ? neg(static_cast<Var>(-value)) : pos(static_cast<Var>(value));
  }
  static constexpr Lit from_code(std::uint32_t code) {
    Lit l;
    l.code_ = code;
    return l;
  }

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool negative() const { return (code_ & 1U) != 0; }
  constexpr bool positive() const { return !negative(); }
  constexpr std::uint32_t code() const { return code_; }
  constexpr bool valid() const { return var() != 0; }
  constexpr int to_dimacs() const {
    return negative() ? -static_cast<int>(var()) : static_cast<int>(var());
  }

  constexpr Lit operator~() const { return from_code(code_ ^ 1U); }
  constexpr auto operator<=>(const Lit&) const = default;

 private:
  std::uint32_t code_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, Lit l) { return os << l.to_dimacs(); }

using Clause = std::vector<Lit>;

struct CnfFormula {
  Var n_vars = 0;
  std::vector<Clause> clauses;

  void add(Clause c) {
    for (Lit l : c) n_vars = std::max(n_vars, l.var());
    clauses.push_back(std::move(c));
  }

  bool operator==(const CnfFormula&) const = default;
};

enum class Value : std::uint8_t { True, False, Undef };

constexpr Value operator!(Value v) {
  return v == Value::Undef ? v : (v == Value::True ? Value::False : Value::True);
}

// A partial or full truth assignment; slot 0 is unused.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(Var n_vars) : values_(n_vars + 1, Value::Undef) {}

  Var n_vars() const { return values_.empty() ? 0 : static_cast<Var>(values_.size() - 1); }

  Value value(Var v) const { return v < values_.size() ? values_[v] : Value::Undef; }
  Value value(Lit l) const {
    Value v = value(l.var());
    return l.negative() ? !v : v;
  }
  bool is_true(Lit l) const { return value(l) == Value::True; }

  void set(Var v, Value val) {
    if (v >= values_.size()) values_.resize(v + 1, Value::Undef);
    values_[v] = val;
  }
  void set(Lit l) { set(l.var(), l.negative() ? Value::False : Value::True); }

  bool satisfies(const Clause& c) const {
    return std::any_of(c.begin(), c.end(), [&](Lit l) { return is_true(l); });
  }

  // The assignment as a literal list, one per defined variable, ascending.
  std::vector<Lit> literals() const {
    std::vector<Lit> out;
    for (Var v = 1; v < values_.size(); ++v) {
      if (values_[v] != Value::Undef) out.emplace_back(v, values_[v] == Value::False);
    }
    return out;
  }

  bool operator==(const Assignment&) const = default;

 private:
  std::vector<Value> values_;
};

enum class Status : std::uint8_t { Sat, Unsat, BudgetExhausted };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Sat: return "SAT";
    case Status::Unsat: return "UNSAT";
    case Status::BudgetExhausted: return "BUDGET_EXHAUSTED";
  }
  return "?";
}

struct SolveOutcome {
  Status status = Status::BudgetExhausted;
  std::optional<Assignment> model;     // Sat only
  std::optional<std::vector<Lit>> core;  // Unsat only; subset of the assumptions
  std::uint64_t n_conflicts = 0;       // this call only

  bool sat() const { return status == Status::Sat; }
  bool unsat() const { return status == Status::Unsat; }

  bool operator==(const SolveOutcome&) const = default;
};

// Result of a unit-propagation query.
class Propagation {
 public:
  static Propagation fixpoint(std::vector<Lit> lits) { return Propagation(false, std::move(lits)); }
  static Propagation conflict() { return Propagation(true, {}); }

  bool is_conflict() const { return conflict_; }
  // Every literal assigned at the fixpoint, assumptions included, in trail order.
  const std::vector<Lit>& literals() const { return lits_; }

 private:
  Propagation(bool conflict, std::vector<Lit> lits) : conflict_(conflict), lits_(std::move(lits)) {}

  bool conflict_;
  std::vector<Lit> lits_;
};

struct SolverConfig {
  std::uint64_t seed = 0;
  double rnd_decision_freq = 0.0;
  double rnd_polarity_freq = 0.0;
  std::optional<std::uint64_t> conflict_budget;
  // Optional wall-clock cap per solve call, in milliseconds. Non-deterministic; off by default.
  std::optional<std::uint64_t> wall_timeout_ms;
};

struct SolverStats {
  std::uint64_t solves = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t learned = 0;
  std::uint64_t restarts = 0;
  std::uint64_t reductions = 0;
};

}  // namespace ctforge::sat
