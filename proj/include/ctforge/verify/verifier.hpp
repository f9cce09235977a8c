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

// Suite validation that shares no code with the builders. Test validity is
// decided by evaluating the constraint trees (auxiliaries are searched
// exhaustively when there are few, otherwise by one SAT query per test on a
// fresh engine); tuples are enumerated here, not through TupleSpace.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "ctforge/error.hpp"
#include "ctforge/model/encoding.hpp"
#include "ctforge/model/sut.hpp"
#include "ctforge/sat/solver.hpp"

namespace ctforge::verify {

struct VerifyReport {
  std::vector<std::size_t> invalid_tests;  // indices of tests violating the constraints
  std::vector<ValueTuple> uncovered;       // allowed tuples no valid test covers
  std::uint64_t total = 0;
  std::uint64_t allowed = 0;
  std::uint64_t forbidden = 0;
  std::uint64_t covered = 0;

  bool valid() const { return invalid_tests.empty() && uncovered.empty(); }
};

inline constexpr std::size_t kMaxEnumeratedAux = 12;

namespace detail {

// Calls fn(params) for each sorted t-subset of [0, n).
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t t, Fn&& fn) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto& self, std::size_t start) -> void {
    if (cur.size() == t) {
      fn(cur);
      return;
    }
    for (std::size_t i = start; i + (t - cur.size()) <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

// True if some assignment of the auxiliaries satisfies every constraint.
inline bool accepts(const SutModel& m, std::span<const std::int32_t> cells) {
  const std::size_t k = m.aux_vars.size();
  std::unique_ptr<bool[]> aux(new bool[k + 1]());
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
    for (std::size_t i = 0; i < k; ++i) aux[i] = ((bits >> i) & 1U) != 0;
    std::span<const bool> as(aux.get(), k);
    bool ok = true;
    for (const auto& c : m.constraints) {
      if (!evaluate(c, cells, as)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

class TestChecker {
 public:
  explicit TestChecker(const SutModel& m) : m_(m) {
    if (m.aux_vars.size() > kMaxEnumeratedAux) {
      enc_.emplace(encode(m));
      solver_.emplace(enc_->formula());
    }
  }

  bool valid(const TestCase& test) {
    if (test.cells.size() != m_.n_params()) return false;
    for (std::size_t p = 0; p < test.cells.size(); ++p) {
      if (test.cells[p] < 0 || static_cast<std::size_t>(test.cells[p]) >= m_.parameters[p].domain_size()) {
        return false;
      }
    }
    if (solver_) {
      auto r = solver_->solve(enc_->literals(test));
      if (r.status == sat::Status::BudgetExhausted) throw EngineFailure("test check did not finish");
      return r.sat();
    }
    return accepts(m_, test.cells);
  }

 private:
  const SutModel& m_;
  std::optional<CnfEncoding> enc_;
  std::optional<sat::Solver> solver_;
};

}  // namespace detail

inline VerifyReport verify_mcac(const SutModel& model, std::size_t t, const TestSuite& suite) {
  model.validate();
  if (t < 1 || t > model.n_params()) throw StrengthOutOfRange(t, model.n_params());
  VerifyReport rep;
  detail::TestChecker checker(model);
  std::vector<const TestCase*> good;
  for (std::size_t i = 0; i < suite.tests.size(); ++i) {
    if (suite.tests[i].cells.size() != model.n_params()) throw ModelError("test width does not match the model");
    if (checker.valid(suite.tests[i])) {
      good.push_back(&suite.tests[i]);
    } else {
      rep.invalid_tests.push_back(i);
    }
  }

  CnfEncoding enc = encode(model);
  sat::Solver solver(enc.formula());
  detail::for_each_subset(model.n_params(), t, [&](const std::vector<std::size_t>& params) {
    // Values of this parameter subset packed in mixed radix.
    std::unordered_set<std::uint64_t> seen;
    for (const TestCase* test : good) {
      std::uint64_t key = 0;
      for (std::size_t p : params) key = key * model.parameters[p].domain_size() + test->cells[p];
      seen.insert(key);
    }
    std::vector<std::size_t> values(t, 0);
    for (;;) {
      std::uint64_t key = 0;
      for (std::size_t i = 0; i < t; ++i) key = key * model.parameters[params[i]].domain_size() + values[i];
      ++rep.total;
      if (seen.count(key)) {
        ++rep.covered;
        ++rep.allowed;
      } else {
        std::vector<ParamValue> pairs;
        for (std::size_t i = 0; i < t; ++i) pairs.push_back({params[i], values[i]});
        ValueTuple tuple(std::move(pairs));
        auto r = solver.solve(enc.literals(tuple));
        if (r.status == sat::Status::BudgetExhausted) throw EngineFailure("tuple check did not finish");
        if (r.sat()) {
          ++rep.allowed;
          rep.uncovered.push_back(std::move(tuple));
        } else {
          ++rep.forbidden;
        }
      }
      std::size_t i = t;
      while (i-- > 0) {
        if (++values[i] < model.parameters[params[i]].domain_size()) break;
        values[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  });
  return rep;
}

inline std::string to_string(const VerifyReport& r, const SutModel& m, std::size_t max_listed = 10) {
  std::ostringstream os;
  os << "valid=" << (r.valid() ? "true" : "false") << '\n'
     << "total=" << r.total << '\n'
     << "allowed=" << r.allowed << '\n'
     << "forbidden=" << r.forbidden << '\n'
     << "covered=" << r.covered << '\n'
     << "invalid_tests=" << r.invalid_tests.size() << '\n'
     << "uncovered=" << r.uncovered.size() << '\n';
  for (std::size_t i = 0; i < r.invalid_tests.size() && i < max_listed; ++i) {
    os << "invalid_test=" << r.invalid_tests[i] + 1 << '\n';
  }
  for (std::size_t i = 0; i < r.uncovered.size() && i < max_listed; ++i) {
    os << "uncovered_tuple=";
    bool first = true;
    for (const auto& pv : r.uncovered[i]) {
      os << (first ? "" : ",") << m.parameters[pv.param].name << '=' << m.parameters[pv.param].values[pv.value];
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

// Exact allowed t-tuples by enumerating every full assignment (auxiliaries
// included). Throws if the assignment count exceeds `cap`.
inline std::set<ValueTuple> oracle_allowed_tuples(const SutModel& model, std::size_t t,
                                                  std::uint64_t cap = 1'000'000) {
  model.validate();
  if (t < 1 || t > model.n_params()) throw StrengthOutOfRange(t, model.n_params());
  std::uint64_t count = 1;
  auto mul = [&](std::uint64_t g) {
    if (g != 0 && count > cap / g) throw Error("assignment space exceeds the oracle cap");
    count *= g;
  };
  for (const auto& p : model.parameters) mul(p.domain_size());
  for (std::size_t i = 0; i < model.aux_vars.size(); ++i) mul(2);
  if (count > cap) throw Error("assignment space exceeds the oracle cap");

  std::vector<std::vector<std::size_t>> subsets;
  detail::for_each_subset(model.n_params(), t, [&](const std::vector<std::size_t>& s) { subsets.push_back(s); });
  std::set<ValueTuple> out;
  std::vector<std::int32_t> cells(model.n_params(), 0);
  for (;;) {
    if (detail::accepts(model, cells)) {
      for (const auto& s : subsets) {
        std::vector<ParamValue> pairs;
        for (std::size_t p : s) pairs.push_back({p, static_cast<std::size_t>(cells[p])});
        out.insert(ValueTuple(std::move(pairs)));
      }
    }
    std::size_t p = 0;
    for (; p < cells.size(); ++p) {
      if (static_cast<std::size_t>(++cells[p]) < model.parameters[p].domain_size()) break;
      cells[p] = 0;
    }
    if (p == cells.size()) break;
  }
  return out;
}

}  // namespace ctforge::verify
