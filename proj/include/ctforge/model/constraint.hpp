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
#include <utility>
#include <vector>

namespace ctforge {

enum class ExprKind : std::uint8_t { Eq, Neq, Aux, Not, And, Or, Implies };

// Constraint AST over parameter values and Boolean auxiliaries. Atoms refer to
// parameters, values and auxiliaries by index into the owning SutModel.
//
// The factory functions keep the tree canonical: nested And/Or chains are
// flattened, one-child And/Or collapse to the child and negated auxiliary
// references fold into the atom's polarity. Parsers and writers rely on this
// for exact round trips.
struct Expr {
  ExprKind kind = ExprKind::And;
  std::size_t param = 0;  // Eq, Neq
  std::size_t value = 0;  // Eq, Neq
  std::size_t aux = 0;    // Aux
  bool positive = true;   // Aux
  std::vector<Expr> children;

  static Expr eq(std::size_t param, std::size_t value) {
    Expr e;
    e.kind = ExprKind::Eq;
    e.param = param;
    e.value = value;
    return e;
  }
  static Expr neq(std::size_t param, std::size_t value) {
    Expr e = eq(param, value);
    e.kind = ExprKind::Neq;
    return e;
  }
  static Expr aux_ref(std::size_t aux, bool positive = true) {
    Expr e;
    e.kind = ExprKind::Aux;
    e.aux = aux;
    e.positive = positive;
    return e;
  }
  static Expr negate(Expr inner) {
    if (inner.kind == ExprKind::Aux) {
      inner.positive = !inner.positive;
      return inner;
    }
    Expr e;
    e.kind = ExprKind::Not;
    e.children.push_back(std::move(inner));
    return e;
  }
  static Expr all(std::vector<Expr> parts) { return nary(ExprKind::And, std::move(parts)); }
  static Expr any(std::vector<Expr> parts) { return nary(ExprKind::Or, std::move(parts)); }
  static Expr implies(Expr premise, Expr conclusion) {
    Expr e;
    e.kind = ExprKind::Implies;
    e.children.push_back(std::move(premise));
    e.children.push_back(std::move(conclusion));
    return e;
  }

  bool is_atom() const { return kind == ExprKind::Eq || kind == ExprKind::Neq || kind == ExprKind::Aux; }

  bool operator==(const Expr&) const = default;

 private:
  static Expr nary(ExprKind kind, std::vector<Expr> parts) {
    Expr e;
    e.kind = kind;
    for (Expr& p : parts) {
      if (p.kind == kind) {
        for (Expr& c : p.children) e.children.push_back(std::move(c));
      } else {
        e.children.push_back(std::move(p));
      }
    }
    if (e.children.size() == 1) return std::move(e.children.front());
    return e;
  }
};

// Direct evaluation on a full assignment: `values[p]` is the value index of
// parameter p, `aux[a]` the truth value of auxiliary a.
inline bool evaluate(const Expr& e, std::span<const std::int32_t> values, std::span<const bool> aux) {
  switch (e.kind) {
    case ExprKind::Eq: return values[e.param] == static_cast<std::int32_t>(e.value);
    case ExprKind::Neq: return values[e.param] != static_cast<std::int32_t>(e.value);
    case ExprKind::Aux: return aux[e.aux] == e.positive;
    case ExprKind::Not: return !evaluate(e.children[0], values, aux);
    case ExprKind::And:
      for (const Expr& c : e.children) {
        if (!evaluate(c, values, aux)) return false;
      }
      return true;
    case ExprKind::Or:
      for (const Expr& c : e.children) {
        if (evaluate(c, values, aux)) return true;
      }
      return false;
    case ExprKind::Implies:
      return !evaluate(e.children[0], values, aux) || evaluate(e.children[1], values, aux);
  }
  return false;
}

// Negation normal form: only atoms, And and Or remain.
inline Expr to_nnf(const Expr& e, bool negated = false) {
  switch (e.kind) {
    case ExprKind::Eq: return negated ? Expr::neq(e.param, e.value) : e;
    case ExprKind::Neq: return negated ? Expr::eq(e.param, e.value) : e;
    case ExprKind::Aux: return Expr::aux_ref(e.aux, negated ? !e.positive : e.positive);
    case ExprKind::Not: return to_nnf(e.children[0], !negated);
    case ExprKind::And:
    case ExprKind::Or: {
      std::vector<Expr> parts;
      parts.reserve(e.children.size());
      for (const Expr& c : e.children) parts.push_back(to_nnf(c, negated));
      bool conj = (e.kind == ExprKind::And) != negated;
      return conj ? Expr::all(std::move(parts)) : Expr::any(std::move(parts));
    }
    case ExprKind::Implies: {
      if (negated) return Expr::all({to_nnf(e.children[0], false), to_nnf(e.children[1], true)});
      return Expr::any({to_nnf(e.children[0], true), to_nnf(e.children[1], false)});
    }
  }
  return e;
}

// If the expression is a flat disjunction of atoms (or a single atom), its atoms.
inline bool as_clause(const Expr& e, std::vector<const Expr*>& atoms) {
  atoms.clear();
  if (e.is_atom()) {
    atoms.push_back(&e);
    return true;
  }
  if (e.kind != ExprKind::Or) return false;
  for (const Expr& c : e.children) {
    if (!c.is_atom()) return false;
    atoms.push_back(&c);
  }
  return true;
}

}  // namespace ctforge
