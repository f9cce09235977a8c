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

#include <random>
#include <string>
#include <vector>

#include "ctforge/model/sut.hpp"

namespace ctforge::testing {

struct ModelShape {
  std::size_t max_params = 4;
  std::size_t max_domain = 3;
  std::size_t max_aux = 2;
  std::size_t max_constraints = 3;
  int max_depth = 3;
};

inline Expr random_expr(std::mt19937_64& rng, const SutModel& m, int depth) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  if (depth == 0 || rng() % 3 == 0) {
    if (!m.aux_vars.empty() && rng() % 4 == 0) return Expr::aux_ref(pick(m.aux_vars.size()), rng() % 2 == 0);
    std::size_t p = pick(m.n_params());
    std::size_t v = pick(m.parameters[p].domain_size());
    return rng() % 2 ? Expr::eq(p, v) : Expr::neq(p, v);
  }
  switch (rng() % 4) {
    case 0: return Expr::negate(random_expr(rng, m, depth - 1));
    case 1: return Expr::implies(random_expr(rng, m, depth - 1), random_expr(rng, m, depth - 1));
    default: {
      std::vector<Expr> parts;
      std::size_t n = 2 + pick(2);
      for (std::size_t i = 0; i < n; ++i) parts.push_back(random_expr(rng, m, depth - 1));
      return rng() % 2 ? Expr::all(std::move(parts)) : Expr::any(std::move(parts));
    }
  }
}

// Random well-formed model with identifier names, all three parameter kinds
// and optional auxiliaries.
inline SutModel random_model(std::mt19937_64& rng, const ModelShape& shape = {}) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  SutModel m;
  m.name = "M" + std::to_string(pick(1000));
  std::size_t n = 1 + pick(shape.max_params);
  for (std::size_t i = 0; i < n; ++i) {
    Parameter p;
    p.name = "P" + std::to_string(i);
    switch (rng() % 3) {
      case 0:
        p.kind = ParamKind::Bool;
        p.values = rng() % 2 ? std::vector<std::string>{"true", "false"} : std::vector<std::string>{"0", "1"};
        break;
      case 1: {
        p.kind = ParamKind::Int;
        std::size_t g = 1 + pick(shape.max_domain);
        for (std::size_t v = 0; v < g; ++v) p.values.push_back(std::to_string(static_cast<int>(v * 5) - 3));
        break;
      }
      default: {
        p.kind = ParamKind::Enum;
        std::size_t g = 1 + pick(shape.max_domain);
        for (std::size_t v = 0; v < g; ++v) p.values.push_back("v" + std::to_string(v));
      }
    }
    m.parameters.push_back(std::move(p));
  }
  std::size_t n_aux = shape.max_aux == 0 ? 0 : pick(shape.max_aux + 1);
  for (std::size_t i = 0; i < n_aux; ++i) m.aux_vars.push_back("a" + std::to_string(i + 1));
  std::size_t n_c = pick(shape.max_constraints + 1);
  for (std::size_t i = 0; i < n_c; ++i) m.constraints.push_back(random_expr(rng, m, shape.max_depth));
  return m;
}

}  // namespace ctforge::testing
