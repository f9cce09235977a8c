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

#include <cctype>
#include <charconv>
#include <climits>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ctforge/error.hpp"
#include "ctforge/formats/text.hpp"
#include "ctforge/sat/types.hpp"

namespace ctforge::formats {

struct DimacsDoc {
  sat::CnfFormula formula;
  sat::Var declared_vars = 0;
  std::size_t declared_clauses = 0;
  std::vector<std::string> comments;
  // Non-fatal findings: clause count mismatch, variables above the header.
  std::vector<std::string> warnings;
};

// Reads a DIMACS CNF file. Variables above the declared count grow the formula
// with a warning; a '%' line ends the input (SATLIB convention).
inline DimacsDoc parse_dimacs_doc(std::string_view text) {
  DimacsDoc doc;
  bool have_header = false;
  sat::Clause current;
  std::size_t lineno = 0;
  std::size_t open_line = 0;
  for (std::string_view line : detail::lines(text)) {
    ++lineno;
    std::string_view t = detail::trim(line);
    if (t.empty()) continue;
    if (t.front() == 'c') {
      doc.comments.emplace_back(detail::trim(t.substr(1)));
      continue;
    }
    if (t.front() == '%') break;
    if (t.front() == 'p') {
      if (have_header) throw ParseError("duplicate header", lineno, 1);
      std::istringstream in{std::string(t)};
      std::string p, fmt, extra;
      long long nv = -1, nc = -1;
      if (!(in >> p >> fmt >> nv >> nc) || p != "p" || fmt != "cnf" || nv < 0 || nc < 0 || (in >> extra)) {
        throw ParseError("malformed header, expected 'p cnf <vars> <clauses>'", lineno, 1);
      }
      doc.declared_vars = static_cast<sat::Var>(nv);
      doc.declared_clauses = static_cast<std::size_t>(nc);
      doc.formula.n_vars = doc.declared_vars;
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("clause before the 'p cnf' header", lineno, 1);
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i == line.size()) break;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, v);
      if (ec != std::errc{} || ptr != line.data() + j || v > INT32_MAX || v < -INT32_MAX) {
        throw ParseError("invalid literal '" + std::string(line.substr(i, j - i)) + "'", lineno, i + 1);
      }
      if (v == 0) {
        doc.formula.clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (current.empty()) open_line = lineno;
        auto lit = sat::Lit::from_dimacs(static_cast<std::int32_t>(v));
        if (lit.var() > doc.formula.n_vars) doc.formula.n_vars = lit.var();
        current.push_back(lit);
      }
      i = j;
    }
  }
  if (!have_header) throw ParseError("missing 'p cnf' header");
  if (!current.empty()) throw ParseError("unterminated clause (missing trailing 0)", open_line, 1);
  if (doc.formula.n_vars > doc.declared_vars) {
    doc.warnings.push_back("header declares " + std::to_string(doc.declared_vars) + " variables but " +
                           std::to_string(doc.formula.n_vars) + " are used");
  }
  if (doc.formula.clauses.size() != doc.declared_clauses) {
    doc.warnings.push_back("header declares " + std::to_string(doc.declared_clauses) + " clauses but " +
                           std::to_string(doc.formula.clauses.size()) + " were read");
  }
  return doc;
}

inline sat::CnfFormula parse_dimacs(std::string_view text) { return parse_dimacs_doc(text).formula; }

inline std::string write_dimacs(const sat::CnfFormula& f, const std::vector<std::string>& comments = {}) {
  std::ostringstream os;
  for (const auto& c : comments) os << "c " << c << '\n';
  os << "p cnf " << f.n_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses) {
    for (auto l : clause) os << l.to_dimacs() << ' ';
    os << "0\n";
  }
  return os.str();
}

}  // namespace ctforge::formats
