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

// Test suites as CSV: a header row of parameter names, then one row per test
// holding value names.

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ctforge/error.hpp"
#include "ctforge/formats/text.hpp"
#include "ctforge/model/sut.hpp"

namespace ctforge::formats {

inline std::string write_suite_csv(const TestSuite& suite, const SutModel& m) {
  std::ostringstream os;
  for (std::size_t p = 0; p < m.n_params(); ++p) {
    const auto& name = m.parameters[p].name;
    if (name.find_first_of(",\"\n") != std::string::npos) throw Inexpressible("parameter name '" + name + "' in CSV");
    os << (p ? "," : "") << name;
  }
  os << '\n';
  for (const auto& t : suite.tests) {
    if (t.cells.size() != m.n_params()) throw ModelError("test width does not match the model");
    for (std::size_t p = 0; p < t.cells.size(); ++p) {
      if (p) os << ',';
      if (t.cells[p] == kEmpty) throw ModelError("cannot write an unassigned cell");
      const auto& v = m.parameters[p].values.at(static_cast<std::size_t>(t.cells[p]));
      if (v.find_first_of(",\"\n") != std::string::npos) throw Inexpressible("value '" + v + "' in CSV");
      os << v;
    }
    os << '\n';
  }
  return os.str();
}

// Columns may appear in any order but must name every parameter exactly once.
inline TestSuite read_suite_csv(std::string_view text, const SutModel& m) {
  TestSuite suite;
  std::vector<std::size_t> column_param;
  std::size_t lineno = 0;
  bool header = true;
  for (std::string_view line : detail::lines(text)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split(line, ',');
    if (header) {
      std::vector<bool> seen(m.n_params(), false);
      for (auto c : cells) {
        auto p = m.param_index(c);
        if (!p) throw ParseError("unknown parameter '" + std::string(c) + "' in header", lineno, 1);
        if (seen[*p]) throw ParseError("duplicate column '" + std::string(c) + "'", lineno, 1);
        seen[*p] = true;
        column_param.push_back(*p);
      }
      if (column_param.size() != m.n_params()) throw ParseError("header does not name every parameter", lineno, 1);
      header = false;
      continue;
    }
    if (cells.size() != column_param.size()) {
      throw ParseError("expected " + std::to_string(column_param.size()) + " cells, got " +
                           std::to_string(cells.size()), lineno, 1);
    }
    TestCase t(m.n_params());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const Parameter& param = m.parameters[column_param[i]];
      auto v = param.value_index(cells[i]);
      if (!v) {
        throw ParseError("unknown value '" + std::string(cells[i]) + "' for parameter '" + param.name + "'", lineno,
                         i + 1);
      }
      t.cells[column_param[i]] = static_cast<std::int32_t>(*v);
    }
    suite.tests.push_back(std::move(t));
  }
  if (header) throw ParseError("empty suite file: missing header");
  return suite;
}

}  // namespace ctforge::formats
