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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ctforge/error.hpp"
#include "ctforge/model/constraint.hpp"

namespace ctforge {

// How a parameter was declared. Bool parameters have exactly two values, the
// first standing for false and the second for true, and compile to a single
// SAT variable.
enum class ParamKind : std::uint8_t { Enum, Bool, Int };

struct Parameter {
  std::string name;
  std::vector<std::string> values;
  ParamKind kind = ParamKind::Enum;

  std::size_t domain_size() const { return values.size(); }

  std::optional<std::size_t> value_index(std::string_view v) const {
    auto it = std::find(values.begin(), values.end(), v);
    if (it == values.end()) return std::nullopt;
    return static_cast<std::size_t>(it - values.begin());
  }

  bool operator==(const Parameter&) const = default;
};

// A system under test: parameters with finite domains, Boolean auxiliaries
// usable only inside constraints, and a conjunction of constraints.
struct SutModel {
  std::string name;
  std::vector<Parameter> parameters;
  std::vector<std::string> aux_vars;
  std::vector<Expr> constraints;
  // Strength recorded by formats that carry one (CASA); builders ignore it.
  std::optional<std::size_t> strength_hint;

  std::size_t n_params() const { return parameters.size(); }

  std::optional<std::size_t> param_index(std::string_view n) const {
    for (std::size_t i = 0; i < parameters.size(); ++i) {
      if (parameters[i].name == n) return i;
    }
    return std::nullopt;
  }
  std::optional<std::size_t> aux_index(std::string_view n) const {
    for (std::size_t i = 0; i < aux_vars.size(); ++i) {
      if (aux_vars[i] == n) return i;
    }
    return std::nullopt;
  }

  std::vector<std::size_t> domain_sizes() const {
    std::vector<std::size_t> out;
    out.reserve(parameters.size());
    for (const auto& p : parameters) out.push_back(p.domain_size());
    return out;
  }

  // Throws ModelError on duplicate names, empty domains or dangling references.
  // Satisfiability is checked by compile().
  void validate() const {
    std::set<std::string_view> names;
    for (const auto& p : parameters) {
      if (p.name.empty()) throw ModelError("parameter with empty name");
      if (!names.insert(p.name).second) throw ModelError("duplicate name '" + p.name + "'");
      if (p.values.empty()) throw ModelError("parameter '" + p.name + "' has an empty domain");
      std::set<std::string_view> vals(p.values.begin(), p.values.end());
      if (vals.size() != p.values.size()) throw ModelError("parameter '" + p.name + "' repeats a value");
      if (p.kind == ParamKind::Bool && p.values.size() != 2) {
        throw ModelError("boolean parameter '" + p.name + "' must have exactly two values");
      }
    }
    for (const auto& a : aux_vars) {
      if (a.empty()) throw ModelError("auxiliary with empty name");
      if (!names.insert(a).second) throw ModelError("duplicate name '" + a + "'");
    }
    for (const auto& c : constraints) check_refs(c);
  }

  bool operator==(const SutModel&) const = default;

 private:
  void check_refs(const Expr& e) const {
    switch (e.kind) {
      case ExprKind::Eq:
      case ExprKind::Neq:
        if (e.param >= parameters.size() || e.value >= parameters[e.param].values.size()) {
          throw ModelError("constraint references an unknown parameter value");
        }
        return;
      case ExprKind::Aux:
        if (e.aux >= aux_vars.size()) throw ModelError("constraint references an unknown auxiliary");
        return;
      default:
        if ((e.kind == ExprKind::Not && e.children.size() != 1) ||
            (e.kind == ExprKind::Implies && e.children.size() != 2) || e.children.empty()) {
          throw ModelError("malformed constraint expression");
        }
        for (const auto& c : e.children) check_refs(c);
    }
  }
};

struct ParamValue {
  std::size_t param = 0;
  std::size_t value = 0;
  auto operator<=>(const ParamValue&) const = default;
};

// A t-tuple: parameter/value pairs over distinct parameters, sorted by parameter.
class ValueTuple {
 public:
  ValueTuple() = default;
  explicit ValueTuple(std::vector<ParamValue> pairs) : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    for (std::size_t i = 1; i < pairs_.size(); ++i) {
      if (pairs_[i].param == pairs_[i - 1].param) throw ModelError("value tuple repeats a parameter");
    }
  }
  ValueTuple(std::initializer_list<ParamValue> pairs) : ValueTuple(std::vector<ParamValue>(pairs)) {}

  std::size_t size() const { return pairs_.size(); }
  const std::vector<ParamValue>& pairs() const { return pairs_; }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

  auto operator<=>(const ValueTuple&) const = default;

 private:
  std::vector<ParamValue> pairs_;
};

inline constexpr std::int32_t kEmpty = -1;

// Per-parameter value indices. kEmpty cells only occur inside builders.
struct TestCase {
  std::vector<std::int32_t> cells;

  TestCase() = default;
  explicit TestCase(std::size_t n_params) : cells(n_params, kEmpty) {}
  explicit TestCase(std::vector<std::int32_t> c) : cells(std::move(c)) {}

  bool complete() const {
    return std::none_of(cells.begin(), cells.end(), [](std::int32_t c) { return c == kEmpty; });
  }

  bool operator==(const TestCase&) const = default;
};

inline bool covers(const TestCase& test, const ValueTuple& tuple) {
  for (const auto& pv : tuple) {
    if (pv.param >= test.cells.size() || test.cells[pv.param] != static_cast<std::int32_t>(pv.value)) {
      return false;
    }
  }
  return true;
}

struct SuiteMeta {
  std::size_t strength = 0;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::uint64_t model_fingerprint = 0;
  double wall_ms = 0.0;
};

struct TestSuite {
  std::vector<TestCase> tests;
  SuiteMeta meta;

  std::size_t size() const { return tests.size(); }
};

namespace detail {

inline void fnv_mix(std::uint64_t& h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  h ^= 0xff;
  h *= 0x100000001b3ULL;
}

inline void fnv_mix_expr(std::uint64_t& h, const Expr& e) {
  fnv_mix(h, std::to_string(static_cast<int>(e.kind)) + ":" + std::to_string(e.param) + ":" +
                 std::to_string(e.value) + ":" + std::to_string(e.aux) + (e.positive ? "+" : "-") + "(" +
                 std::to_string(e.children.size()));
  for (const auto& c : e.children) fnv_mix_expr(h, c);
}

}  // namespace detail

// Stable 64-bit FNV-1a hash of the model's structure.
inline std::uint64_t fingerprint(const SutModel& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  detail::fnv_mix(h, m.name);
  for (const auto& p : m.parameters) {
    detail::fnv_mix(h, p.name);
    detail::fnv_mix(h, std::to_string(static_cast<int>(p.kind)));
    for (const auto& v : p.values) detail::fnv_mix(h, v);
  }
  for (const auto& a : m.aux_vars) detail::fnv_mix(h, a);
  for (const auto& c : m.constraints) detail::fnv_mix_expr(h, c);
  return h;
}

}  // namespace ctforge
