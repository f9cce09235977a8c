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
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ctforge/error.hpp"
#include "ctforge/model/encoding.hpp"
#include "ctforge/model/sut.hpp"
#include "ctforge/sat/solver.hpp"

namespace ctforge {

// Dense indexing of all t-tuples of a model.
//
// Tuples are ordered lexicographically: first by parameter combination (itself
// in lexicographic order), then by values with the lowest parameter most
// significant. index_of/tuple_at are inverse bijections onto [0, size()).
class TupleSpace {
 public:
  TupleSpace(std::vector<std::size_t> domains, std::size_t t) : domains_(std::move(domains)), t_(t) {
    const std::size_t n = domains_.size();
    if (t_ < 1 || t_ > n) throw StrengthOutOfRange(t_, n);
    binom_.assign(n + 1, std::vector<std::uint64_t>(t_ + 1, 0));
    for (std::size_t i = 0; i <= n; ++i) {
      binom_[i][0] = 1;
      for (std::size_t j = 1; j <= std::min(i, t_); ++j) {
        binom_[i][j] = binom_[i - 1][j - 1] + (j <= i - 1 ? binom_[i - 1][j] : 0);
      }
    }
    // cum_[i][x] = sum_{j<x} C(n-1-j, t-1-i)
    cum_.assign(t_, std::vector<std::uint64_t>(n + 1, 0));
    for (std::size_t i = 0; i < t_; ++i) {
      for (std::size_t x = 0; x < n; ++x) cum_[i][x + 1] = cum_[i][x] + choose(n - 1 - x, t_ - 1 - i);
    }
    const std::uint64_t n_combos = choose(n, t_);
    offsets_.resize(n_combos + 1, 0);
    std::vector<std::size_t> combo(t_);
    for (std::size_t i = 0; i < t_; ++i) combo[i] = i;
    for (std::uint64_t r = 0; r < n_combos; ++r) {
      std::uint64_t prod = 1;
      for (std::size_t p : combo) prod *= domains_[p];
      offsets_[r + 1] = offsets_[r] + prod;
      next_combination(combo, n);
    }
  }

  std::size_t strength() const { return t_; }
  std::size_t n_params() const { return domains_.size(); }
  const std::vector<std::size_t>& domains() const { return domains_; }
  std::uint64_t size() const { return offsets_.back(); }
  std::uint64_t n_combinations() const { return offsets_.size() - 1; }
  std::uint64_t combination_offset(std::uint64_t rank) const { return offsets_[rank]; }

  // Lexicographic rank of a sorted parameter combination of size t.
  std::uint64_t rank(std::span<const std::size_t> combo) const {
    std::uint64_t r = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < t_; ++i) {
      r += cum_[i][combo[i]] - cum_[i][start];
      start = combo[i] + 1;
    }
    return r;
  }

  std::vector<std::size_t> unrank(std::uint64_t r) const {
    std::vector<std::size_t> combo(t_);
    std::size_t j = 0;
    const std::size_t n = domains_.size();
    for (std::size_t i = 0; i < t_; ++i) {
      for (;; ++j) {
        std::uint64_t c = choose(n - 1 - j, t_ - 1 - i);
        if (r < c) break;
        r -= c;
      }
      combo[i] = j++;
    }
    return combo;
  }

  // Index of the tuple whose sorted parameters are `params` with `values`.
  std::uint64_t index_of(std::span<const std::size_t> params, std::span<const std::size_t> values) const {
    std::uint64_t local = 0;
    for (std::size_t i = 0; i < t_; ++i) local = local * domains_[params[i]] + values[i];
    return offsets_[rank(params)] + local;
  }

  std::uint64_t index_of(const ValueTuple& tuple) const {
    std::vector<std::size_t> params, values;
    for (const auto& pv : tuple) {
      params.push_back(pv.param);
      values.push_back(pv.value);
    }
    return index_of(params, values);
  }

  ValueTuple tuple_at(std::uint64_t index) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
    auto r = static_cast<std::uint64_t>(it - offsets_.begin()) - 1;
    std::vector<std::size_t> combo = unrank(r);
    std::uint64_t local = index - offsets_[r];
    std::vector<ParamValue> pairs(t_);
    for (std::size_t i = t_; i-- > 0;) {
      pairs[i] = {combo[i], static_cast<std::size_t>(local % domains_[combo[i]])};
      local /= domains_[combo[i]];
    }
    return ValueTuple(std::move(pairs));
  }

  // Calls fn(index) for every t-tuple covered by a test (kEmpty cells skipped).
  template <typename Fn>
  void for_each_covered(const TestCase& test, Fn&& fn) const {
    std::vector<std::size_t> fixed;
    for (std::size_t p = 0; p < test.cells.size(); ++p) {
      if (test.cells[p] != kEmpty) fixed.push_back(p);
    }
    if (fixed.size() < t_) return;
    std::vector<std::size_t> pick(t_), params(t_), values(t_);
    for (std::size_t i = 0; i < t_; ++i) pick[i] = i;
    do {
      for (std::size_t i = 0; i < t_; ++i) {
        params[i] = fixed[pick[i]];
        values[i] = static_cast<std::size_t>(test.cells[params[i]]);
      }
      fn(index_of(params, values));
    } while (next_combination(pick, fixed.size()));
  }

  std::uint64_t choose(std::size_t n, std::size_t k) const {
    if (k > n) return 0;
    if (n < binom_.size() && k < binom_[n].size()) return binom_[n][k];
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  }

  // Advances a sorted k-subset of [0, n) to its lexicographic successor.
  static bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
      if (c[i] < n - k + i) {
        ++c[i];
        for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
        return true;
      }
    }
    return false;
  }

 private:
  std::vector<std::size_t> domains_;
  std::size_t t_;
  std::vector<std::vector<std::uint64_t>> binom_;
  std::vector<std::vector<std::uint64_t>> cum_;
  std::vector<std::uint64_t> offsets_;
};

inline std::uint64_t count_tuples(const SutModel& model, std::size_t t) {
  return TupleSpace(model.domain_sizes(), t).size();
}

// Visits every t-tuple in lexicographic order.
template <typename Fn>
void for_each_tuple(const SutModel& model, std::size_t t, Fn&& fn) {
  TupleSpace space(model.domain_sizes(), t);
  for (std::uint64_t i = 0; i < space.size(); ++i) fn(space.tuple_at(i));
}

inline std::vector<ValueTuple> enumerate_tuples(const SutModel& model, std::size_t t) {
  std::vector<ValueTuple> out;
  for_each_tuple(model, t, [&](ValueTuple tuple) { out.push_back(std::move(tuple)); });
  return out;
}

enum class BudgetPolicy : std::uint8_t { Throw, TreatAsForbidden };

// A tuple is allowed iff some test case satisfying the constraints covers it.
inline bool is_allowed(const ValueTuple& tuple, const CnfEncoding& enc, sat::Solver& solver,
                       BudgetPolicy policy = BudgetPolicy::Throw) {
  auto r = solver.solve(enc.literals(tuple));
  if (r.status == sat::Status::BudgetExhausted) {
    if (policy == BudgetPolicy::TreatAsForbidden) return false;
    throw EngineFailure("allowed-tuple check exhausted its budget");
  }
  return r.sat();
}

}  // namespace ctforge
