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
#include <stdexcept>
#include <string>

namespace ctforge {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    std::string out = "line " + std::to_string(line);
    if (column != 0) out += ", column " + std::to_string(column);
    return out + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

// A model that breaks a structural invariant (duplicate names, unknown references, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

// The model accepts no parameterization at all.
class ModelUnsatisfiable : public ModelError {
 public:
  ModelUnsatisfiable() : ModelError("model constraints are unsatisfiable") {}
};

class StrengthOutOfRange : public Error {
 public:
  StrengthOutOfRange(std::size_t t, std::size_t n_params)
      : Error("strength " + std::to_string(t) + " out of range for " + std::to_string(n_params) +
              " parameters") {}
};

// A model feature the target format cannot represent (e.g. auxiliaries in CASA).
class Inexpressible : public Error {
 public:
  using Error::Error;
};

// The SAT engine could not decide a query that had to be exact.
class EngineFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace ctforge
