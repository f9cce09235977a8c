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

// ACTS model files and the extended dialect with an [Auxiliar] section:
//
//   [System]
//   Name: MySUT
//   [Parameter]
//   OS (enum) : L,W,M,i,A
//   Debug (boolean) : true,false
//   [Auxiliar]
//   a1 (bool)
//   [Constraint]
//   C1: (OS = "L" || OS = "W") => (Debug && !a1)
//
// Constraint grammar, loosest binding first: `=>` (right associative), `||`,
// `&&`, `!`. Atoms are `P = "v"`, `P != "v"` (quotes optional), a bare boolean
// parameter or auxiliary name, or a parenthesized expression. A constraint may
// carry an optional `Label:` prefix and may continue over several lines while
// parentheses are open or the line ends in an operator.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ctforge/error.hpp"
#include "ctforge/formats/text.hpp"
#include "ctforge/model/sut.hpp"

namespace ctforge::formats {

namespace detail {

enum class Tok : std::uint8_t { Name, String, LParen, RParen, Not, And, Or, Implies, Eq, Neq, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

}  // namespace detail

struct ActsParameterDecl {
  std::string name;
  std::string type;  // as written: enum, int, bool, boolean
  std::vector<std::string> values;
  std::size_t line = 0;
};

struct ActsConstraintText {
  std::string text;
  std::size_t line = 0;
  std::vector<detail::Token> tokens;
};

// Section-level view of an ACTS document before name resolution.
struct ActsDoc {
  std::string system_name;
  std::vector<ActsParameterDecl> parameters;
  std::vector<ActsParameterDecl> auxiliaries;
  std::vector<ActsConstraintText> constraints;
  bool has_aux_section = false;
};

namespace detail {

inline bool bare_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' || c == '+';
}

inline void tokenize(std::string_view s, std::size_t line, std::size_t col0, std::vector<Token>& out) {
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    std::size_t col = col0 + i;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    auto two = s.substr(i, 2);
    auto push = [&](Tok k, std::string text, std::size_t len) {
      out.push_back({k, std::move(text), line, col});
      i += len;
    };
    if (two == "&&") {
      push(Tok::And, "&&", 2);
    } else if (two == "||") {
      push(Tok::Or, "||", 2);
    } else if (two == "=>") {
      push(Tok::Implies, "=>", 2);
    } else if (two == "!=") {
      push(Tok::Neq, "!=", 2);
    } else if (two == "==") {
      push(Tok::Eq, "==", 2);
    } else if (c == '=') {
      push(Tok::Eq, "=", 1);
    } else if (c == '!') {
      push(Tok::Not, "!", 1);
    } else if (c == '(') {
      push(Tok::LParen, "(", 1);
    } else if (c == ')') {
      push(Tok::RParen, ")", 1);
    } else if (c == '"') {
      auto close = s.find('"', i + 1);
      if (close == std::string_view::npos) throw ParseError("unterminated string", line, col);
      push(Tok::String, std::string(s.substr(i + 1, close - i - 1)), close - i + 1);
    } else if (bare_char(c)) {
      std::size_t j = i;
      while (j < s.size() && bare_char(s[j])) ++j;
      push(Tok::Name, std::string(s.substr(i, j - i)), j - i);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
}

class ExprParser {
 public:
  ExprParser(std::vector<Token> tokens, const SutModel& model) : toks_(std::move(tokens)), model_(model) {
    Token end;
    end.kind = Tok::End;
    if (!toks_.empty()) {
      end.line = toks_.back().line;
      end.column = toks_.back().column + toks_.back().text.size();
    }
    toks_.push_back(end);
  }

  Expr parse() {
    Expr e = implication();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, peek().line, peek().column);
  }

  Expr implication() {
    Expr lhs = disjunction();
    if (peek().kind != Tok::Implies) return lhs;
    take();
    return Expr::implies(std::move(lhs), implication());
  }

  Expr disjunction() {
    std::vector<Expr> parts{conjunction()};
    while (peek().kind == Tok::Or) {
      take();
      parts.push_back(conjunction());
    }
    return parts.size() == 1 ? std::move(parts.front()) : Expr::any(std::move(parts));
  }

  Expr conjunction() {
    std::vector<Expr> parts{unary()};
    while (peek().kind == Tok::And) {
      take();
      parts.push_back(unary());
    }
    return parts.size() == 1 ? std::move(parts.front()) : Expr::all(std::move(parts));
  }

  Expr unary() {
    if (peek().kind == Tok::Not) {
      take();
      return Expr::negate(unary());
    }
    return primary();
  }

  Expr primary() {
    if (peek().kind == Tok::LParen) {
      take();
      Expr e = implication();
      if (peek().kind != Tok::RParen) fail("expected ')'");
      take();
      return e;
    }
    if (peek().kind != Tok::Name) fail(peek().kind == Tok::End ? "unexpected end of constraint" : "expected a name");
    const Token& name = take();
    if (auto p = model_.param_index(name.text)) {
      const Parameter& param = model_.parameters[*p];
      if (peek().kind == Tok::Eq || peek().kind == Tok::Neq) {
        bool eq = take().kind == Tok::Eq;
        if (peek().kind != Tok::Name && peek().kind != Tok::String) fail("expected a value");
        const Token& val = take();
        auto v = param.value_index(val.text);
        if (!v) throw ParseError("unknown value '" + val.text + "' for parameter '" + name.text + "'", val.line,
                                 val.column);
        return eq ? Expr::eq(*p, *v) : Expr::neq(*p, *v);
      }
      if (param.kind != ParamKind::Bool) {
        throw ParseError("parameter '" + name.text + "' needs a comparison", name.line, name.column);
      }
      return Expr::eq(*p, true_value(param));
    }
    if (auto a = model_.aux_index(name.text)) return Expr::aux_ref(*a);
    throw ParseError("unknown name '" + name.text + "'", name.line, name.column);
  }

  static std::size_t true_value(const Parameter& p) {
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      if (lower(p.values[i]) == "true") return i;
    }
    return 1;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const SutModel& model_;
};

inline bool continues(const std::vector<Token>& toks) {
  if (toks.empty()) return false;
  int depth = 0;
  for (const auto& t : toks) {
    if (t.kind == Tok::LParen) ++depth;
    if (t.kind == Tok::RParen) --depth;
  }
  if (depth > 0) return true;
  Tok last = toks.back().kind;
  return last == Tok::And || last == Tok::Or || last == Tok::Implies || last == Tok::Not || last == Tok::Eq ||
         last == Tok::Neq;
}

// Splits an optional "Label:" prefix. Returns the column offset of the body.
inline std::size_t label_end(std::string_view line) {
  auto colon = line.find(':');
  if (colon == std::string_view::npos) return 0;
  return is_identifier(trim(line.substr(0, colon))) ? colon + 1 : 0;
}

inline ActsParameterDecl parse_decl(std::string_view line, std::size_t lineno) {
  ActsParameterDecl d;
  d.line = lineno;
  auto open = line.find('(');
  auto close = line.find(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw ParseError("expected 'name (type) : values'", lineno, 1);
  }
  d.name = std::string(trim(line.substr(0, open)));
  if (d.name.empty()) throw ParseError("missing parameter name", lineno, 1);
  d.type = lower(trim(line.substr(open + 1, close - open - 1)));
  std::string_view rest = trim(line.substr(close + 1));
  if (!rest.empty()) {
    if (rest.front() != ':') throw ParseError("expected ':' after type", lineno, close + 2);
    rest.remove_prefix(1);
    if (!trim(rest).empty()) {
      for (auto v : split(rest, ',')) {
        if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
        if (v.empty()) throw ParseError("empty value in domain of '" + d.name + "'", lineno, 1);
        d.values.emplace_back(v);
      }
    }
  }
  return d;
}

}  // namespace detail

// Splits a document into sections. `extended` enables the [Auxiliar] section.
inline ActsDoc parse_acts_doc(std::string_view text, bool extended) {
  enum class Section { None, System, Parameter, Auxiliar, Constraint, Other };
  ActsDoc doc;
  Section section = Section::None;
  int last_rank = 0;
  std::vector<detail::Token> pending;
  std::size_t lineno = 0;

  for (std::string_view raw : detail::lines(text)) {
    ++lineno;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.starts_with("--") || line.starts_with("#")) continue;
    if (line.front() == '[') {
      auto close = line.find(']');
      if (close == std::string_view::npos) throw ParseError("unterminated section tag", lineno, 1);
      std::string tag = detail::lower(detail::trim(line.substr(1, close - 1)));
      int rank = 0;
      if (tag == "system") {
        section = Section::System;
        rank = 1;
      } else if (tag == "parameter" || tag == "parameters") {
        section = Section::Parameter;
        rank = 2;
      } else if (tag == "auxiliar" || tag == "auxiliary" || tag == "auxiliaries") {
        if (!extended) throw ParseError("[Auxiliar] requires the extended ACTS format", lineno, 1);
        section = Section::Auxiliar;
        doc.has_aux_section = true;
        rank = 3;
      } else if (tag == "constraint" || tag == "constraints") {
        section = Section::Constraint;
        rank = 4;
      } else {
        section = Section::Other;
      }
      if (rank != 0) {
        if (rank <= last_rank) throw ParseError("section [" + tag + "] out of order", lineno, 1);
        last_rank = rank;
      }
      pending.clear();
      continue;
    }
    switch (section) {
      case Section::None:
        throw ParseError("content outside of any section", lineno, 1);
      case Section::System: {
        auto colon = line.find(':');
        if (colon != std::string_view::npos && detail::lower(detail::trim(line.substr(0, colon))) == "name") {
          doc.system_name = std::string(detail::trim(line.substr(colon + 1)));
        }
        break;
      }
      case Section::Parameter:
        doc.parameters.push_back(detail::parse_decl(line, lineno));
        break;
      case Section::Auxiliar:
        doc.auxiliaries.push_back(detail::parse_decl(line, lineno));
        break;
      case Section::Constraint: {
        const std::size_t indent = static_cast<std::size_t>(line.data() - raw.data());
        std::size_t body = detail::label_end(line);
        bool labelled = body != 0;
        std::vector<detail::Token> toks;
        detail::tokenize(line.substr(body), lineno, indent + body + 1, toks);
        if (!labelled && detail::continues(pending) && !doc.constraints.empty()) {
          doc.constraints.back().text += " ";
          doc.constraints.back().text += std::string(line);
          pending.insert(pending.end(), toks.begin(), toks.end());
          doc.constraints.back().tokens = pending;
        } else {
          doc.constraints.push_back({std::string(line.substr(body)), lineno, toks});
          pending = std::move(toks);
        }
        break;
      }
      case Section::Other:
        break;
    }
  }
  if (last_rank < 2) throw ParseError("missing [Parameter] section");
  return doc;
}

inline Parameter resolve_parameter(const ActsParameterDecl& d) {
  Parameter p;
  p.name = d.name;
  p.values = d.values;
  if (d.type == "enum") {
    p.kind = ParamKind::Enum;
  } else if (d.type == "int" || d.type == "integer" || d.type == "number") {
    p.kind = ParamKind::Int;
    for (const auto& v : p.values) {
      std::size_t i = (v.front() == '-' || v.front() == '+') ? 1 : 0;
      if (i == v.size() || !std::all_of(v.begin() + static_cast<std::ptrdiff_t>(i), v.end(),
                                        [](unsigned char c) { return std::isdigit(c); })) {
        throw ParseError("non-integer value '" + v + "' for int parameter '" + d.name + "'", d.line, 1);
      }
    }
  } else if (d.type == "bool" || d.type == "boolean") {
    p.kind = ParamKind::Bool;
    if (p.values.empty()) p.values = {"true", "false"};
    if (p.values.size() != 2) throw ParseError("boolean '" + d.name + "' needs exactly two values", d.line, 1);
  } else {
    throw ParseError("unknown parameter type '" + d.type + "'", d.line, 1);
  }
  if (p.values.empty()) throw ParseError("parameter '" + d.name + "' has no values", d.line, 1);
  return p;
}

// Resolves names and parses constraint expressions.
inline SutModel to_model(const ActsDoc& doc) {
  SutModel m;
  m.name = doc.system_name;
  for (const auto& d : doc.parameters) m.parameters.push_back(resolve_parameter(d));
  for (const auto& d : doc.auxiliaries) {
    if (d.type != "bool" && d.type != "boolean") {
      throw ParseError("auxiliary '" + d.name + "' must be boolean", d.line, 1);
    }
    m.aux_vars.push_back(d.name);
  }
  try {
    m.validate();
  } catch (const ModelError& e) {
    throw ParseError(e.what());
  }
  for (const auto& c : doc.constraints) {
    m.constraints.push_back(detail::ExprParser(c.tokens, m).parse());
  }
  return m;
}

inline SutModel parse_extended_acts(std::string_view text) { return to_model(parse_acts_doc(text, true)); }
inline SutModel parse_acts(std::string_view text) { return to_model(parse_acts_doc(text, false)); }

// Parses a single constraint expression against a model's names.
inline Expr parse_constraint(std::string_view text, const SutModel& model) {
  std::vector<detail::Token> toks;
  detail::tokenize(text, 1, 1, toks);
  return detail::ExprParser(std::move(toks), model).parse();
}

namespace detail {

inline int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Implies: return 1;
    case ExprKind::Or: return 2;
    case ExprKind::And: return 3;
    case ExprKind::Not: return 4;
    default: return 5;
  }
}

inline void print(std::ostream& os, const Expr& e, const SutModel& m, int min_prec) {
  const int prec = precedence(e);
  const bool parens = prec < min_prec;
  if (parens) os << '(';
  switch (e.kind) {
    case ExprKind::Eq:
    case ExprKind::Neq:
      os << m.parameters[e.param].name << (e.kind == ExprKind::Eq ? " = \"" : " != \"")
         << m.parameters[e.param].values[e.value] << '"';
      break;
    case ExprKind::Aux:
      os << (e.positive ? "" : "!") << m.aux_vars[e.aux];
      break;
    case ExprKind::Not: {
      const Expr& inner = e.children[0];
      os << '!';
      print(os, inner, m, inner.kind == ExprKind::Eq || inner.kind == ExprKind::Neq ? 6 : 4);
      break;
    }
    case ExprKind::And:
    case ExprKind::Or:
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i != 0) os << (e.kind == ExprKind::And ? " && " : " || ");
        print(os, e.children[i], m, prec + 1);
      }
      break;
    case ExprKind::Implies:
      print(os, e.children[0], m, 2);
      os << " => ";
      print(os, e.children[1], m, 1);
      break;
  }
  if (parens) os << ')';
}

inline void check_writable(const SutModel& m) {
  auto bad = [](const std::string& s) {
    return s.empty() || s.find_first_of(",\"\n\r") != std::string::npos || trim(s) != s;
  };
  for (const auto& p : m.parameters) {
    if (!is_identifier(p.name)) throw Inexpressible("parameter name '" + p.name + "' is not an identifier");
    for (const auto& v : p.values) {
      if (bad(v)) throw Inexpressible("value '" + v + "' of '" + p.name + "' cannot be written");
    }
  }
  for (const auto& a : m.aux_vars) {
    if (!is_identifier(a)) throw Inexpressible("auxiliary name '" + a + "' is not an identifier");
  }
}

inline const char* type_name(ParamKind k) {
  switch (k) {
    case ParamKind::Enum: return "enum";
    case ParamKind::Bool: return "boolean";
    case ParamKind::Int: return "int";
  }
  return "enum";
}

}  // namespace detail

inline std::string to_string(const Expr& e, const SutModel& model) {
  std::ostringstream os;
  detail::print(os, e, model, 0);
  return os.str();
}

inline std::string write_extended_acts(const SutModel& m) {
  m.validate();
  detail::check_writable(m);
  std::ostringstream os;
  os << "[System]\nName: " << m.name << "\n[Parameter]\n";
  for (const auto& p : m.parameters) {
    os << p.name << " (" << detail::type_name(p.kind) << ") : ";
    for (std::size_t i = 0; i < p.values.size(); ++i) os << (i ? "," : "") << p.values[i];
    os << '\n';
  }
  if (!m.aux_vars.empty()) {
    os << "[Auxiliar]\n";
    for (const auto& a : m.aux_vars) os << a << " (bool)\n";
  }
  if (!m.constraints.empty()) {
    os << "[Constraint]\n";
    for (const auto& c : m.constraints) os << to_string(c, m) << '\n';
  }
  return os.str();
}

inline std::string write_acts(const SutModel& m) {
  if (!m.aux_vars.empty()) throw Inexpressible("plain ACTS cannot represent auxiliary variables");
  return write_extended_acts(m);
}

}  // namespace ctforge::formats
