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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ctforge/error.hpp"
#include "ctforge/model/encoding.hpp"
#include "ctforge/model/sut.hpp"
#include "ctforge/sat/solver.hpp"

namespace ctforge::mcac {

struct BuildStats {
  std::uint64_t sat_calls = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t budget_exhausted = 0;  // limited checks that were optimistically accepted
  std::uint64_t amendments = 0;        // parameters unfixed while amending
  std::uint64_t forbidden_tuples = 0;  // proven forbidden while building
  std::uint64_t slices = 0;
  std::uint64_t peak_pool_bytes = 0;
};

// Receives each finished test as soon as it is built.
using TestSink = std::function<void(const TestCase&)>;

namespace detail {

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::vector<sat::Lit> test_literals(const CnfEncoding& enc, std::span<const std::int32_t> cells) {
  std::vector<sat::Lit> lits;
  for (std::size_t p = 0; p < cells.size(); ++p) {
    if (cells[p] != kEmpty) lits.push_back(enc.literal(p, static_cast<std::size_t>(cells[p])));
  }
  return lits;
}

// Exact satisfiability under assumptions; throws if the engine gives up.
inline bool consistent(sat::Solver& solver, const CnfEncoding& enc, std::span<const std::int32_t> cells,
                       BuildStats& stats, sat::Assignment* model = nullptr) {
  ++stats.sat_calls;
  auto r = solver.solve(test_literals(enc, cells));
  if (r.status == sat::Status::BudgetExhausted) throw EngineFailure("consistency check did not finish");
  if (r.sat() && model != nullptr) *model = std::move(*r.model);
  return r.sat();
}

// Fills every empty cell from a model of the fixed cells.
inline void complete(TestCase& test, sat::Solver& solver, const CnfEncoding& enc, BuildStats& stats) {
  if (test.complete()) return;
  sat::Assignment model;
  if (!consistent(solver, enc, test.cells, stats, &model)) {
    throw EngineFailure("a partial test became inconsistent with the constraints");
  }
  enc.fill_from(test, model);
}

inline void check_strength(const SutModel& model, std::size_t t) {
  if (t < 1 || t > model.n_params()) throw StrengthOutOfRange(t, model.n_params());
}

}  // namespace detail
}  // namespace ctforge::mcac
