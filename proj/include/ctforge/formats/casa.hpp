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

// CASA input files. The model file holds the parameter count, the strength
// and the domain sizes:
//
//   4
//   2
//   5 4 4 2
//
// Values are numbered globally from 0 in parameter order, so parameter i with
// value v is symbol offset(i) + v. The constraints file holds a clause count
// and then, per clause, a literal count followed by sign/symbol pairs:
//
//   1
//   2
//   - 0 + 14
//
// Parameters are named p1..pk and values "0".."g-1".

#include <cctype>
#include <charconv>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctforge/error.hpp"
#include "ctforge/formats/text.hpp"
#include "ctforge/model/sut.hpp"

namespace ctforge::formats {

struct CasaLiteral {
  bool positive = true;
  std::size_t symbol = 0;
  bool operator==(const CasaLiteral&) const = default;
};

struct CasaDoc {
  std::size_t strength = 2;
  std::vector<std::size_t> domains;
  std::vector<std::vector<CasaLiteral>> clauses;
};

namespace detail {

class NumberReader {
 public:
  NumberReader(std::string_view text, const char* what) : what_(what) {
    std::size_t lineno = 0;
    for (auto line : lines(text)) {
      ++lineno;
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) toks_.push_back({line.substr(i, j - i), lineno, i + 1});
        i = j;
      }
    }
  }

  bool done() const { return pos_ == toks_.size(); }

  std::string_view sign() {
    const Tok& t = next("a sign");
    if (t.text != "+" && t.text != "-") throw ParseError(std::string(what_) + ": expected '+' or '-'", t.line, t.col);
    return t.text;
  }

  std::size_t number() {
    const Tok& t = next("a number");
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || p != t.text.data() + t.text.size()) {
      throw ParseError(std::string(what_) + ": expected a non-negative integer, got '" + std::string(t.text) + "'",
                       t.line, t.col);
    }
    return v;
  }

  void expect_end() const {
    if (!done()) {
      throw ParseError(std::string(what_) + ": unexpected trailing content", toks_[pos_].line, toks_[pos_].col);
    }
  }

 private:
  struct Tok {
    std::string_view text;
    std::size_t line;
    std::size_t col;
  };

  const Tok& next(const char* expected) {
    if (done()) throw ParseError(std::string(what_) + ": unexpected end of file, expected " + expected);
    return toks_[pos_++];
  }

  const char* what_;
  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// `constraints_text` may be empty for an unconstrained model.
inline CasaDoc parse_casa_doc(std::string_view model_text, std::string_view constraints_text) {
  CasaDoc doc;
  detail::NumberReader m(model_text, "model");
  std::size_t first = m.number();
  std::size_t second = m.number();
  std::size_t symbols = 0;
  while (!m.done()) {
    std::size_t g = m.number();
    if (g == 0) throw ParseError("model: empty domain for parameter " + std::to_string(doc.domains.size() + 1));
    doc.domains.push_back(g);
    symbols += g;
  }
  // Parameter count first, then strength. Files with the two swapped are
  // recognized by the number of domain sizes that follow.
  if (doc.domains.size() == first) {
    doc.strength = second;
  } else if (doc.domains.size() == second) {
    doc.strength = first;
  } else {
    throw ParseError("model: declared " + std::to_string(first) + " parameters but found " +
                     std::to_string(doc.domains.size()) + " domain sizes");
  }
  m.expect_end();

  detail::NumberReader c(constraints_text, "constraints");
  if (c.done()) return doc;
  std::size_t n_clauses = c.number();
  for (std::size_t i = 0; i < n_clauses; ++i) {
    std::size_t len = c.number();
    std::vector<CasaLiteral> clause;
    for (std::size_t j = 0; j < len; ++j) {
      bool pos = c.sign() == "+";
      std::size_t s = c.number();
      if (s >= symbols) {
        throw ParseError("constraints: symbol " + std::to_string(s) + " out of range (" + std::to_string(symbols) +
                         " symbols)");
      }
      clause.push_back({pos, s});
    }
    doc.clauses.push_back(std::move(clause));
  }
  c.expect_end();
  return doc;
}

inline SutModel to_model(const CasaDoc& doc) {
  SutModel m;
  std::vector<std::pair<std::size_t, std::size_t>> symbol;  // symbol -> (param, value)
  for (std::size_t i = 0; i < doc.domains.size(); ++i) {
    Parameter p;
    p.name = "p" + std::to_string(i + 1);
    for (std::size_t v = 0; v < doc.domains[i]; ++v) {
      p.values.push_back(std::to_string(v));
      symbol.emplace_back(i, v);
    }
    m.parameters.push_back(std::move(p));
  }
  for (const auto& clause : doc.clauses) {
    std::vector<Expr> atoms;
    for (const auto& lit : clause) {
      auto [p, v] = symbol[lit.symbol];
      atoms.push_back(lit.positive ? Expr::eq(p, v) : Expr::neq(p, v));
    }
    m.constraints.push_back(atoms.empty() ? Expr::any({}) : Expr::any(std::move(atoms)));
  }
  m.strength_hint = doc.strength;
  return m;
}

inline SutModel parse_casa(std::string_view model_text, std::string_view constraints_text) {
  return to_model(parse_casa_doc(model_text, constraints_text));
}

// Clausal form of an NNF expression by distribution. Returns nothing if the
// result would exceed `limit` clauses.
inline std::optional<std::vector<std::vector<Expr>>> distribute(const Expr& nnf, std::size_t limit) {
  using Cnf = std::vector<std::vector<Expr>>;
  if (nnf.is_atom()) return Cnf{{nnf}};
  Cnf out;
  if (nnf.kind == ExprKind::And) {
    for (const Expr& c : nnf.children) {
      auto sub = distribute(c, limit);
      if (!sub || out.size() + sub->size() > limit) return std::nullopt;
      out.insert(out.end(), sub->begin(), sub->end());
    }
    return out;
  }
  // Or: cross product of the children's clause sets. An empty Or is false.
  out.push_back({});
  for (const Expr& c : nnf.children) {
    auto sub = distribute(c, limit);
    if (!sub || out.size() * sub->size() > limit) return std::nullopt;
    Cnf next;
    for (const auto& a : out) {
      for (const auto& b : *sub) {
        auto merged = a;
        merged.insert(merged.end(), b.begin(), b.end());
        next.push_back(std::move(merged));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline constexpr std::size_t kCasaClauseLimit = 100000;

// Converts a model to CASA form. Throws Inexpressible for auxiliaries or when
// a constraint's clausal form exceeds the clause limit.
inline CasaDoc to_casa(const SutModel& m, std::size_t strength) {
  m.validate();
  if (!m.aux_vars.empty()) throw Inexpressible("CASA cannot represent auxiliary variables");
  CasaDoc doc;
  doc.strength = strength;
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (const auto& p : m.parameters) {
    offset.push_back(total);
    doc.domains.push_back(p.domain_size());
    total += p.domain_size();
  }
  for (const Expr& c : m.constraints) {
    auto cnf = distribute(to_nnf(c), kCasaClauseLimit);
    if (!cnf || doc.clauses.size() + cnf->size() > kCasaClauseLimit) {
      throw Inexpressible("constraint is too large for clausal CASA form");
    }
    for (const auto& clause : *cnf) {
      std::vector<CasaLiteral> lits;
      for (const Expr& a : clause) lits.push_back({a.kind == ExprKind::Eq, offset[a.param] + a.value});
      doc.clauses.push_back(std::move(lits));
    }
  }
  return doc;
}

struct CasaFiles {
  std::string model;
  std::string constraints;
};

inline CasaFiles write_casa(const CasaDoc& doc) {
  CasaFiles out;
  std::ostringstream m;
  m << doc.domains.size() << '\n' << doc.strength << '\n';
  for (std::size_t i = 0; i < doc.domains.size(); ++i) m << (i ? " " : "") << doc.domains[i];
  m << '\n';
  out.model = m.str();
  std::ostringstream c;
  c << doc.clauses.size() << '\n';
  for (const auto& clause : doc.clauses) {
    c << clause.size() << '\n';
    for (std::size_t i = 0; i < clause.size(); ++i) {
      c << (i ? " " : "") << (clause[i].positive ? "+ " : "- ") << clause[i].symbol;
    }
    c << '\n';
  }
  out.constraints = c.str();
  return out;
}

inline CasaFiles write_casa(const SutModel& m, std::size_t strength) { return write_casa(to_casa(m, strength)); }

}  // namespace ctforge::formats
