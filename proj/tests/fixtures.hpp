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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ctforge/model/sut.hpp"

namespace ctforge::testing {

inline std::string data_path(const std::string& name) { return std::string(CTFORGE_TEST_DATA) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string read_data(const std::string& name) { return read_file(data_path(name)); }

// The four-parameter web/mobile SUT, built without any parser.
//   OS: L W M i A   Pl: F S C A   Re: K F H W   Or: P L
inline SutModel example1() {
  SutModel m;
  m.name = "MySUT";
  m.parameters = {{"OS", {"L", "W", "M", "i", "A"}, ParamKind::Enum},
                  {"Pl", {"F", "S", "C", "A"}, ParamKind::Enum},
                  {"Re", {"K", "F", "H", "W"}, ParamKind::Enum},
                  {"Or", {"P", "L"}, ParamKind::Enum}};
  enum { OS, Pl, Re, Or };
  m.constraints.push_back(Expr::implies(Expr::any({Expr::eq(OS, 0), Expr::eq(OS, 1), Expr::eq(OS, 2)}),
                                        Expr::all({Expr::eq(Or, 1), Expr::neq(Pl, 3)})));
  m.constraints.push_back(Expr::implies(Expr::eq(Pl, 1), Expr::any({Expr::eq(OS, 2), Expr::eq(OS, 3)})));
  m.constraints.push_back(Expr::implies(Expr::any({Expr::eq(OS, 3), Expr::eq(OS, 4)}), Expr::neq(Re, 0)));
  return m;
}

}  // namespace ctforge::testing
