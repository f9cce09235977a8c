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

// BOT-its: builds the suite one test at a time. Each test is seeded with the
// first uncovered tuple of the pool (proven allowed by an exact check), then
// the remaining parameters are fixed greedily in a shuffled order. Fixes are
// validated only by conflict-limited checks; an inconclusive check counts as
// consistent. The finished test gets one exact check and, while it fails, the
// most recently fixed parameter is released again. Released cells are filled
// from the model of the final check.
//
// PBOT-its bounds the pool: tuples are loaded in slices of consecutive tuple
// indices that fit a byte budget, and each slice is exhausted before the next
// one is loaded. BOT-its is the single-slice case.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "ctforge/mcac/common.hpp"
#include "ctforge/model/tuples.hpp"

namespace ctforge::mcac {

struct BotConfig {
  // Conflict budget of the per-fix consistency checks.
  std::uint64_t cb = 100;
  std::uint64_t seed = 0;
  // PBOT: resident pool bytes. Unset means a single slice.
  std::optional<std::uint64_t> pool_budget;
};

namespace detail {

enum class TupleStatus : std::uint8_t { Unknown, Allowed, Covered, Forbidden };

class BotBuilder {
 public:
  BotBuilder(const SutModel& model, std::size_t t, const BotConfig& cfg, BuildStats& stats)
      : model_(model), space_(model.domain_sizes(), t), enc_(compile(model)), solver_(enc_.formula()),
        rng_(cfg.seed), cfg_(cfg), stats_(stats) {
    if (cfg.cb < 1) throw Error("cb must be at least 1");
    if (cfg.pool_budget && *cfg.pool_budget < sizeof(TupleStatus)) throw Error("pool budget below one tuple");
  }

  std::vector<TestCase> run(const TestSink& sink) {
    const std::uint64_t total = space_.size();
    const std::uint64_t slice_len =
        cfg_.pool_budget ? std::max<std::uint64_t>(1, *cfg_.pool_budget / sizeof(TupleStatus)) : total;
    for (std::uint64_t lo = 0; lo < total; lo += slice_len) {
      load(lo, std::min(total, lo + slice_len));
      while (auto seed = next_seed()) {
        TestCase test = build_one_test(*seed);
        cover(test);
        suite_.push_back(test);
        if (sink) sink(suite_.back());
      }
    }
    pool_.clear();
    pool_.shrink_to_fit();
    return std::move(suite_);
  }

 private:
  void load(std::uint64_t lo, std::uint64_t hi) {
    lo_ = lo;
    cursor_ = 0;
    pool_.assign(hi - lo, TupleStatus::Unknown);
    ++stats_.slices;
    stats_.peak_pool_bytes = std::max<std::uint64_t>(stats_.peak_pool_bytes, pool_.size() * sizeof(TupleStatus));
    for (const auto& test : suite_) cover(test);
  }

  TupleStatus* slot(std::uint64_t index) {
    if (index < lo_ || index >= lo_ + pool_.size()) return nullptr;
    return &pool_[index - lo_];
  }

  static bool pending(TupleStatus s) { return s == TupleStatus::Unknown || s == TupleStatus::Allowed; }

  void cover(const TestCase& test) {
    space_.for_each_covered(test, [&](std::uint64_t i) {
      if (auto* s = slot(i)) *s = TupleStatus::Covered;
    });
  }

  // First pending tuple of the slice, proven allowed.
  std::optional<ValueTuple> next_seed() {
    for (; cursor_ < pool_.size(); ++cursor_) {
      auto& s = pool_[cursor_];
      if (!pending(s)) continue;
      ValueTuple tuple = space_.tuple_at(lo_ + cursor_);
      if (s == TupleStatus::Unknown) {
        ++stats_.sat_calls;
        solver_.set_conflict_budget(std::nullopt);
        auto r = solver_.solve(enc_.literals(tuple));
        if (r.status == sat::Status::BudgetExhausted) throw EngineFailure("allowed-tuple check did not finish");
        if (r.unsat()) {
          s = TupleStatus::Forbidden;
          ++stats_.forbidden_tuples;
          continue;
        }
        s = TupleStatus::Allowed;
      }
      return tuple;
    }
    return std::nullopt;
  }

  // Pending tuples of the slice that fixing q = v would newly cover.
  std::uint64_t gain(const TestCase& test, const std::vector<std::size_t>& fixed, std::size_t q, std::size_t v) {
    const std::size_t t = space_.strength();
    if (fixed.size() + 1 < t) return 0;
    std::uint64_t n = 0;
    std::vector<std::size_t> pick(t - 1), params(t), values(t);
    std::iota(pick.begin(), pick.end(), 0);
    do {
      // merge q into the sorted parameter list
      std::size_t j = 0;
      bool placed = false;
      for (std::size_t i = 0; i < t - 1; ++i) {
        std::size_t p = fixed[pick[i]];
        if (!placed && q < p) {
          params[j] = q;
          values[j++] = v;
          placed = true;
        }
        params[j] = p;
        values[j++] = static_cast<std::size_t>(test.cells[p]);
      }
      if (!placed) {
        params[j] = q;
        values[j] = v;
      }
      if (auto* s = slot(space_.index_of(params, values)); s && pending(*s)) ++n;
    } while (t > 1 && TupleSpace::next_combination(pick, fixed.size()));
    return n;
  }

  TestCase build_one_test(const ValueTuple& seed) {
    TestCase test(model_.n_params());
    std::vector<std::size_t> fixed;  // sorted
    for (const auto& pv : seed) {
      test.cells[pv.param] = static_cast<std::int32_t>(pv.value);
      fixed.push_back(pv.param);
    }
    std::vector<std::size_t> rest;
    for (std::size_t p = 0; p < model_.n_params(); ++p) {
      if (test.cells[p] == kEmpty) rest.push_back(p);
    }
    std::shuffle(rest.begin(), rest.end(), rng_);

    std::vector<std::size_t> stack;  // non-seed fixes, in order
    solver_.set_conflict_budget(cfg_.cb);
    for (std::size_t q : rest) {
      const std::size_t g = model_.parameters[q].domain_size();
      std::vector<std::uint64_t> score(g);
      for (std::size_t v = 0; v < g; ++v) score[v] = gain(test, fixed, q, v);
      std::vector<std::size_t> cand(g);
      std::iota(cand.begin(), cand.end(), 0);
      std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
      for (std::size_t v : cand) {
        test.cells[q] = static_cast<std::int32_t>(v);
        ++stats_.sat_calls;
        auto r = solver_.solve(test_literals(enc_, test.cells));
        if (r.status == sat::Status::BudgetExhausted) ++stats_.budget_exhausted;
        if (!r.unsat()) break;
        test.cells[q] = kEmpty;
      }
      if (test.cells[q] != kEmpty) {
        stack.push_back(q);
        fixed.insert(std::upper_bound(fixed.begin(), fixed.end(), q), q);
      }
    }
    solver_.set_conflict_budget(std::nullopt);

    // Amend: release the latest fixes until the test passes an exact check.
    sat::Assignment model;
    while (!consistent(solver_, enc_, test.cells, stats_, &model)) {
      if (stack.empty()) throw EngineFailure("seed tuple of a test is inconsistent");
      test.cells[stack.back()] = kEmpty;
      stack.pop_back();
      ++stats_.amendments;
    }
    enc_.fill_from(test, model);
    return test;
  }

  const SutModel& model_;
  TupleSpace space_;
  CnfEncoding enc_;
  sat::Solver solver_;
  std::mt19937_64 rng_;
  BotConfig cfg_;
  BuildStats& stats_;
  std::vector<TupleStatus> pool_;
  std::uint64_t lo_ = 0;
  std::uint64_t cursor_ = 0;
  std::vector<TestCase> suite_;
};

}  // namespace detail

inline TestSuite build_pbot(const SutModel& model, std::size_t t, const BotConfig& cfg = {},
                            BuildStats* stats = nullptr, const TestSink& sink = {}) {
  detail::Stopwatch clock;
  detail::check_strength(model, t);
  BuildStats local;
  BuildStats& s = stats ? *stats : local;
  TestSuite suite;
  suite.tests = detail::BotBuilder(model, t, cfg, s).run(sink);
  suite.meta = {t, cfg.pool_budget ? "pbot" : "bot", cfg.seed, fingerprint(model), clock.ms()};
  return suite;
}

inline TestSuite build_bot(const SutModel& model, std::size_t t, BotConfig cfg = {}, BuildStats* stats = nullptr,
                           const TestSink& sink = {}) {
  cfg.pool_budget.reset();
  return build_pbot(model, t, cfg, stats, sink);
}

}  // namespace ctforge::mcac
