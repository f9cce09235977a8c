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

// IPOG with SAT-backed constraint handling.
//
// Parameters are processed in descending domain-size order. The suite starts
// with one test per allowed t-tuple of the first t parameters; each further
// parameter p is absorbed by horizontal extension (pick the value of p that
// covers most pending tuples in each existing test), then by placing the
// leftover allowed tuples into tests with compatible empty cells, and
// finally by vertical growth. Every partial test is kept consistent with the
// constraints; empty cells are completed from a SAT model at the end.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "ctforge/mcac/common.hpp"
#include "ctforge/model/tuples.hpp"

namespace ctforge::mcac {

struct IpogConfig {
  // 0 breaks value ties by lowest index; any other seed shuffles tied values.
  std::uint64_t seed = 0;
};

namespace detail {

class IpogBuilder {
 public:
  IpogBuilder(const SutModel& model, std::size_t t, const IpogConfig& cfg, BuildStats& stats)
      : model_(model), t_(t), enc_(compile(model)), solver_(enc_.formula()), rng_(cfg.seed), seed_(cfg.seed),
        stats_(stats) {
    order_.resize(model.n_params());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return model.parameters[a].domain_size() > model.parameters[b].domain_size();
    });
  }

  std::vector<TestCase> run() {
    initial_suite();
    for (std::size_t k = t_; k < order_.size(); ++k) extend(k);
    for (auto& test : suite_) complete(test, solver_, enc_, stats_);
    return std::move(suite_);
  }

  // Value of parameter p for `test` covering most pool tuples among the
  // consistent ones, or kEmpty if no consistent value covers any.
  std::int32_t choose_best_value(TestCase& test, std::size_t p, std::span<const std::uint64_t> gains) {
    std::vector<std::size_t> cand;
    for (std::size_t v = 0; v < gains.size(); ++v) {
      if (gains[v] > 0) cand.push_back(v);
    }
    std::vector<std::uint64_t> tie(gains.size(), 0);
    if (seed_ != 0) {
      for (auto& x : tie) x = rng_();
    }
    std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
      if (gains[a] != gains[b]) return gains[a] > gains[b];
      return tie[a] < tie[b];
    });
    for (std::size_t v : cand) {
      test.cells[p] = static_cast<std::int32_t>(v);
      if (check(test)) return test.cells[p];
    }
    test.cells[p] = kEmpty;
    return kEmpty;
  }

 private:
  bool check(const TestCase& test) {
    auto it = memo_.find(test.cells);
    if (it != memo_.end()) {
      ++stats_.memo_hits;
      return it->second;
    }
    bool ok = consistent(solver_, enc_, test.cells, stats_);
    memo_.emplace(test.cells, ok);
    return ok;
  }

  void initial_suite() {
    std::vector<std::size_t> first(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(t_));
    std::vector<std::size_t> values(t_, 0);
    for (;;) {
      TestCase test(model_.n_params());
      for (std::size_t i = 0; i < t_; ++i) test.cells[first[i]] = static_cast<std::int32_t>(values[i]);
      if (check(test)) {
        suite_.push_back(test);
      } else {
        ++stats_.forbidden_tuples;
      }
      std::size_t i = t_;
      while (i-- > 0) {
        if (++values[i] < model_.parameters[first[i]].domain_size()) break;
        values[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }

  // Pool of t-tuples pairing parameter order_[k] with (t-1)-tuples over the
  // processed parameters order_[0..k). Index = sub_index * g + value.
  struct Pool {
    std::vector<std::size_t> processed;  // original parameter ids, by position
    std::size_t p = 0;
    std::size_t g = 0;
    std::optional<TupleSpace> sub;       // strength t-1 over processed; none when t == 1
    std::vector<std::uint8_t> pending;
    std::uint64_t remaining = 0;

    TestCase project(const TestCase& test) const {
      TestCase out(processed.size());
      for (std::size_t i = 0; i < processed.size(); ++i) out.cells[i] = test.cells[processed[i]];
      return out;
    }

    template <typename Fn>
    void for_each_sub(const TestCase& test, Fn&& fn) const {
      if (!sub) {
        fn(std::uint64_t{0});
        return;
      }
      sub->for_each_covered(project(test), fn);
    }
  };

  void extend(std::size_t k) {
    Pool pool;
    pool.processed.assign(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(k));
    pool.p = order_[k];
    pool.g = model_.parameters[pool.p].domain_size();
    std::vector<std::size_t> sub_domains;
    for (std::size_t q : pool.processed) sub_domains.push_back(model_.parameters[q].domain_size());
    if (t_ > 1) pool.sub.emplace(sub_domains, t_ - 1);
    const std::uint64_t n_sub = pool.sub ? pool.sub->size() : 1;
    pool.pending.assign(n_sub * pool.g, 0);
    stats_.peak_pool_bytes = std::max<std::uint64_t>(stats_.peak_pool_bytes, pool.pending.size());

    for (const auto& test : suite_) {
      pool.for_each_sub(test, [&](std::uint64_t s) {
        for (std::size_t v = 0; v < pool.g; ++v) {
          auto& slot = pool.pending[s * pool.g + v];
          if (slot == 0) {
            slot = 1;
            ++pool.remaining;
          }
        }
      });
    }

    auto mark_covered = [&](const TestCase& test) {
      if (test.cells[pool.p] == kEmpty) return;
      auto v = static_cast<std::size_t>(test.cells[pool.p]);
      pool.for_each_sub(test, [&](std::uint64_t s) {
        auto& slot = pool.pending[s * pool.g + v];
        if (slot == 1) {
          slot = 0;
          --pool.remaining;
        }
      });
    };

    // Horizontal extension.
    std::vector<std::uint64_t> gains(pool.g);
    for (auto& test : suite_) {
      if (pool.remaining == 0) break;
      std::fill(gains.begin(), gains.end(), 0);
      pool.for_each_sub(test, [&](std::uint64_t s) {
        for (std::size_t v = 0; v < pool.g; ++v) gains[v] += pool.pending[s * pool.g + v];
      });
      if (choose_best_value(test, pool.p, gains) != kEmpty) mark_covered(test);
    }
    if (pool.remaining == 0) return;

    // Leftover tuples: drop forbidden ones, fill the empties, grow vertically.
    for (std::uint64_t i = 0; i < pool.pending.size(); ++i) {
      if (pool.pending[i] == 0) continue;
      TestCase tau(model_.n_params());
      tau.cells[pool.p] = static_cast<std::int32_t>(i % pool.g);
      if (pool.sub) {
        for (const auto& pv : pool.sub->tuple_at(i / pool.g)) {
          tau.cells[pool.processed[pv.param]] = static_cast<std::int32_t>(pv.value);
        }
      }
      pool.pending[i] = 0;
      --pool.remaining;
      if (!check(tau)) {
        ++stats_.forbidden_tuples;
        continue;
      }
      bool placed = false;
      for (auto& test : suite_) {
        TestCase merged = test;
        bool fits = true;
        for (std::size_t q = 0; q < tau.cells.size() && fits; ++q) {
          if (tau.cells[q] == kEmpty) continue;
          if (merged.cells[q] == kEmpty) {
            merged.cells[q] = tau.cells[q];
          } else if (merged.cells[q] != tau.cells[q]) {
            fits = false;
          }
        }
        if (!fits || !check(merged)) continue;
        test = std::move(merged);
        mark_covered(test);
        placed = true;
        break;
      }
      if (!placed) {
        suite_.push_back(tau);
        mark_covered(tau);
      }
    }
  }

  const SutModel& model_;
  std::size_t t_;
  CnfEncoding enc_;
  sat::Solver solver_;
  std::mt19937_64 rng_;
  std::uint64_t seed_;
  BuildStats& stats_;
  std::vector<std::size_t> order_;
  std::vector<TestCase> suite_;
  std::map<std::vector<std::int32_t>, bool> memo_;
};

}  // namespace detail

inline TestSuite build_ipog(const SutModel& model, std::size_t t, const IpogConfig& cfg = {},
                            BuildStats* stats = nullptr) {
  detail::Stopwatch clock;
  detail::check_strength(model, t);
  BuildStats local;
  BuildStats& s = stats ? *stats : local;
  TestSuite suite;
  suite.tests = detail::IpogBuilder(model, t, cfg, s).run();
  suite.meta = {t, "ipog", cfg.seed, fingerprint(model), clock.ms()};
  return suite;
}

}  // namespace ctforge::mcac
