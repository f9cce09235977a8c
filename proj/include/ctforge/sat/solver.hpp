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

// Incremental CDCL solver: two-watched-literal propagation, 1UIP learning with
// recursive minimization, VSIDS branching, phase saving, Luby restarts and
// LBD-driven learned-clause deletion. Assumptions are the first decisions.

#include <algorithm>
#include <bit>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ctforge/sat/types.hpp"

namespace ctforge::sat {

namespace detail {

// Max-heap of variables keyed by an external activity array.
class VarHeap {
 public:
  explicit VarHeap(const std::vector<double>& activity) : activity_(&activity) {}

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  Var at(std::size_t i) const { return heap_[i]; }
  bool contains(Var v) const { return v < index_.size() && index_[v] >= 0; }

  void grow(Var v) {
    if (index_.size() <= v) index_.resize(v + 1, -1);
  }

  void insert(Var v) {
    grow(v);
    if (contains(v)) return;
    index_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    sift_up(heap_.size() - 1);
  }

  void increased(Var v) {
    if (contains(v)) sift_up(static_cast<std::size_t>(index_[v]));
  }

  Var pop() {
    Var top = heap_.front();
    heap_.front() = heap_.back();
    index_[heap_.front()] = 0;
    index_[top] = -1;
    heap_.pop_back();
    if (heap_.size() > 1) sift_down(0);
    return top;
  }

 private:
  bool less(Var a, Var b) const {
    double aa = (*activity_)[a], ab = (*activity_)[b];
    return aa > ab || (aa == ab && a < b);
  }

  void sift_up(std::size_t i) {
    Var v = heap_[i];
    while (i > 0) {
      std::size_t parent = (i - 1) / 2;
      if (!less(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      index_[heap_[i]] = static_cast<int>(i);
      i = parent;
    }
    heap_[i] = v;
    index_[v] = static_cast<int>(i);
  }

  void sift_down(std::size_t i) {
    Var v = heap_[i];
    for (;;) {
      std::size_t child = 2 * i + 1;
      if (child >= heap_.size()) break;
      if (child + 1 < heap_.size() && less(heap_[child + 1], heap_[child])) ++child;
      if (!less(heap_[child], v)) break;
      heap_[i] = heap_[child];
      index_[heap_[i]] = static_cast<int>(i);
      i = child;
    }
    heap_[i] = v;
    index_[v] = static_cast<int>(i);
  }

  const std::vector<double>* activity_;
  std::vector<Var> heap_;
  std::vector<int> index_;
};

inline double luby(double y, std::uint64_t x) {
  std::uint64_t size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1.0;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

}  // namespace detail

class Solver {
 public:
  explicit Solver(SolverConfig config = {}) : config_(config), heap_(activity_) {
    reseed(config_.seed);
    activity_.push_back(0.0);
    assigns_.push_back(Value::Undef);
    levels_.push_back(0);
    reasons_.push_back(kNoRef);
    phase_.push_back(1);
    seen_.push_back(0);
    watches_.resize(2);
  }

  explicit Solver(const CnfFormula& formula, SolverConfig config = {}) : Solver(config) {
    add_formula(formula);
  }

  // Not copyable: the heap holds a pointer into activity_.
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  Var n_vars() const { return static_cast<Var>(assigns_.size() - 1); }
  bool okay() const { return ok_; }
  const SolverConfig& config() const { return config_; }
  const SolverStats& stats() const { return stats_; }

  Var new_var() {
    Var v = static_cast<Var>(assigns_.size());
    assigns_.push_back(Value::Undef);
    levels_.push_back(0);
    reasons_.push_back(kNoRef);
    activity_.push_back(0.0);
    phase_.push_back(1);
    seen_.push_back(0);
    watches_.resize(2 * (static_cast<std::size_t>(v) + 1));
    heap_.insert(v);
    return v;
  }

  void reserve_vars(Var n) {
    while (n_vars() < n) new_var();
  }

  void set_seed(std::uint64_t seed) {
    config_.seed = seed;
    reseed(seed);
  }
  void set_conflict_budget(std::optional<std::uint64_t> budget) { config_.conflict_budget = budget; }
  void set_wall_timeout_ms(std::optional<std::uint64_t> ms) { config_.wall_timeout_ms = ms; }

  // Conjoins a clause. Duplicates are merged, tautologies dropped; returns false
  // once the formula is known to be unsatisfiable.
  bool add_clause(std::span<const Lit> lits) {
    if (!ok_) return false;
    scratch_.assign(lits.begin(), lits.end());
    for (Lit l : scratch_) reserve_vars(l.var());
    std::sort(scratch_.begin(), scratch_.end());
    std::size_t j = 0;
    Lit prev;
    for (Lit l : scratch_) {
      if (value(l) == Value::True || (prev.valid() && l == ~prev)) return true;
      if (l != prev && value(l) != Value::False) scratch_[j++] = l;
      prev = l;
    }
    scratch_.resize(j);
    if (scratch_.empty()) {
      ok_ = false;
      return false;
    }
    if (scratch_.size() == 1) {
      enqueue(scratch_[0], kNoRef);
      ok_ = propagate_units() == kNoRef;
      return ok_;
    }
    CRef cr = alloc_clause(scratch_, false, 0);
    originals_.push_back(cr);
    attach(cr);
    return true;
  }
  bool add_clause(std::initializer_list<Lit> lits) {
    return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  void add_formula(const CnfFormula& f) {
    reserve_vars(f.n_vars);
    for (const Clause& c : f.clauses) add_clause(c);
  }

  SolveOutcome solve(std::span<const Lit> assumps = {}) {
    ++stats_.solves;
    SolveOutcome out;
    conflicts_this_call_ = 0;
    for (Lit l : assumps) reserve_vars(l.var());
    if (!ok_) {
      out.status = Status::Unsat;
      out.core = std::vector<Lit>{};
      return out;
    }
    assumptions_.assign(assumps.begin(), assumps.end());
    core_.clear();
    timed_out_ = false;
    if (config_.wall_timeout_ms) {
      deadline_ = std::chrono::steady_clock::now() + std::chrono::milliseconds(*config_.wall_timeout_ms);
    } else {
      deadline_.reset();
    }
    collect_garbage_if_needed();

    Result res = Result::Undef;
    for (std::uint64_t restarts = 0; res == Result::Undef; ++restarts) {
      auto limit = static_cast<std::uint64_t>(detail::luby(2.0, restarts) * kRestartBase);
      res = search(limit);
      if (res == Result::Undef && !within_budget()) break;
      if (res == Result::Undef) ++stats_.restarts;
    }

    out.n_conflicts = conflicts_this_call_;
    if (res == Result::Sat) {
      out.status = Status::Sat;
      Assignment model(n_vars());
      for (Var v = 1; v <= n_vars(); ++v) model.set(v, assigns_[v]);
      out.model = std::move(model);
    } else if (res == Result::Unsat) {
      out.status = Status::Unsat;
      out.core = core_;
    } else {
      out.status = Status::BudgetExhausted;
    }
    cancel_until(0);
    assumptions_.clear();
    return out;
  }
  SolveOutcome solve(std::initializer_list<Lit> assumps) {
    return solve(std::span<const Lit>(assumps.begin(), assumps.size()));
  }

  // Unit propagation of the clause database (learned clauses included, all of
  // which are implied by the loaded formula) under the given assumptions.
  Propagation propagate(std::span<const Lit> assumps = {}) {
    for (Lit l : assumps) reserve_vars(l.var());
    if (!ok_) return Propagation::conflict();
    bool conflict = false;
    for (Lit a : assumps) {
      Value v = value(a);
      if (v == Value::True) continue;
      if (v == Value::False) {
        conflict = true;
        break;
      }
      new_decision_level();
      enqueue(a, kNoRef);
      if (propagate_units() != kNoRef) {
        conflict = true;
        break;
      }
    }
    std::vector<Lit> lits;
    if (!conflict) lits = trail_;
    cancel_until(0);
    return conflict ? Propagation::conflict() : Propagation::fixpoint(std::move(lits));
  }
  Propagation propagate(std::initializer_list<Lit> assumps) {
    return propagate(std::span<const Lit>(assumps.begin(), assumps.size()));
  }

 private:
  using CRef = std::uint32_t;
  static constexpr CRef kNoRef = std::numeric_limits<CRef>::max();
  static constexpr std::uint32_t kHeader = 3;  // size|flags, lbd, activity bits
  static constexpr double kRestartBase = 100.0;
  static constexpr double kVarDecay = 0.95;
  static constexpr double kClauseDecay = 0.999;
  static constexpr std::uint64_t kFirstReduce = 2000;
  static constexpr std::uint64_t kReduceIncrement = 300;

  enum class Result { Sat, Unsat, Undef };

  struct Watcher {
    CRef cref;
    Lit blocker;
  };

  // --- clause arena -------------------------------------------------------
  CRef alloc_clause(std::span<const Lit> lits, bool learnt, std::uint32_t lbd) {
    auto cr = static_cast<CRef>(arena_.size());
    arena_.push_back((static_cast<std::uint32_t>(lits.size()) << 2) | (learnt ? 2U : 0U));
    arena_.push_back(lbd);
    arena_.push_back(std::bit_cast<std::uint32_t>(0.0F));
    for (Lit l : lits) arena_.push_back(l.code());
    return cr;
  }
  std::uint32_t csize(CRef cr) const { return arena_[cr] >> 2; }
  bool clearnt(CRef cr) const { return (arena_[cr] & 2U) != 0; }
  bool cdeleted(CRef cr) const { return (arena_[cr] & 1U) != 0; }
  void cmark_deleted(CRef cr) { arena_[cr] |= 1U; }
  std::uint32_t& clbd(CRef cr) { return arena_[cr + 1]; }
  float cactivity(CRef cr) const { return std::bit_cast<float>(arena_[cr + 2]); }
  void set_cactivity(CRef cr, float a) { arena_[cr + 2] = std::bit_cast<std::uint32_t>(a); }
  Lit clit(CRef cr, std::uint32_t i) const { return Lit::from_code(arena_[cr + kHeader + i]); }
  void set_clit(CRef cr, std::uint32_t i, Lit l) { arena_[cr + kHeader + i] = l.code(); }

  void attach(CRef cr) {
    Lit c0 = clit(cr, 0), c1 = clit(cr, 1);
    watches_[(~c0).code()].push_back({cr, c1});
    watches_[(~c1).code()].push_back({cr, c0});
  }

  bool locked(CRef cr) const {
    Lit c0 = clit(cr, 0);
    return value(c0) == Value::True && reasons_[c0.var()] == cr;
  }

  void remove_clause(CRef cr) {
    Lit c0 = clit(cr, 0);
    if (locked(cr)) reasons_[c0.var()] = kNoRef;
    cmark_deleted(cr);
    wasted_ += kHeader + csize(cr);
  }

  // Compacts the arena and rebuilds every watch list. Only at level 0.
  void collect_garbage_if_needed() {
    if (decision_level() != 0 || wasted_ * 2 < arena_.size()) return;
    std::vector<std::uint32_t> fresh;
    fresh.reserve(arena_.size() - wasted_);
    auto move_list = [&](std::vector<CRef>& list) {
      std::size_t j = 0;
      for (CRef cr : list) {
        if (cdeleted(cr)) continue;
        auto nr = static_cast<CRef>(fresh.size());
        fresh.insert(fresh.end(), arena_.begin() + cr, arena_.begin() + cr + kHeader + csize(cr));
        list[j++] = nr;
      }
      list.resize(j);
    };
    move_list(originals_);
    move_list(learnts_);
    arena_ = std::move(fresh);
    wasted_ = 0;
    for (auto& w : watches_) w.clear();
    for (CRef cr : originals_) attach(cr);
    for (CRef cr : learnts_) attach(cr);
    // Level-0 reasons are never inspected by analysis.
    for (Lit l : trail_) reasons_[l.var()] = kNoRef;
  }

  // --- assignment ---------------------------------------------------------
  Value value(Lit l) const {
    Value v = assigns_[l.var()];
    return l.negative() ? !v : v;
  }
  std::uint32_t decision_level() const { return static_cast<std::uint32_t>(trail_lim_.size()); }
  void new_decision_level() { trail_lim_.push_back(static_cast<std::uint32_t>(trail_.size())); }

  void enqueue(Lit l, CRef reason) {
    assigns_[l.var()] = l.negative() ? Value::False : Value::True;
    levels_[l.var()] = decision_level();
    reasons_[l.var()] = reason;
    trail_.push_back(l);
  }

  void cancel_until(std::uint32_t level) {
    if (decision_level() <= level) return;
    for (std::size_t i = trail_.size(); i-- > trail_lim_[level];) {
      Var v = trail_[i].var();
      assigns_[v] = Value::Undef;
      reasons_[v] = kNoRef;
      phase_[v] = trail_[i].negative() ? 1 : 0;
      heap_.insert(v);
    }
    trail_.resize(trail_lim_[level]);
    trail_lim_.resize(level);
    qhead_ = std::min<std::size_t>(qhead_, trail_.size());
  }

  // Returns the conflicting clause, or kNoRef at fixpoint.
  CRef propagate_units() {
    CRef conflict = kNoRef;
    while (qhead_ < trail_.size()) {
      Lit p = trail_[qhead_++];
      ++stats_.propagations;
      std::vector<Watcher>& ws = watches_[p.code()];
      std::size_t i = 0, j = 0;
      const std::size_t n = ws.size();
      while (i < n) {
        Watcher w = ws[i];
        if (value(w.blocker) == Value::True) {
          ws[j++] = ws[i++];
          continue;
        }
        CRef cr = w.cref;
        if (cdeleted(cr)) {
          ++i;
          continue;
        }
        Lit false_lit = ~p;
        if (clit(cr, 0) == false_lit) {
          set_clit(cr, 0, clit(cr, 1));
          set_clit(cr, 1, false_lit);
        }
        ++i;
        Lit first = clit(cr, 0);
        Watcher nw{cr, first};
        if (first != w.blocker && value(first) == Value::True) {
          ws[j++] = nw;
          continue;
        }
        bool moved = false;
        const std::uint32_t sz = csize(cr);
        for (std::uint32_t k = 2; k < sz; ++k) {
          Lit lk = clit(cr, k);
          if (value(lk) != Value::False) {
            set_clit(cr, 1, lk);
            set_clit(cr, k, false_lit);
            watches_[(~lk).code()].push_back(nw);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = nw;
        if (value(first) == Value::False) {
          conflict = cr;
          qhead_ = trail_.size();
          while (i < n) ws[j++] = ws[i++];
        } else {
          enqueue(first, cr);
        }
      }
      ws.resize(j);
      if (conflict != kNoRef) break;
    }
    return conflict;
  }

  // --- heuristics -----------------------------------------------------------
  void reseed(std::uint64_t seed) { rng_.seed(seed); }
  double draw() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  void bump_var(Var v) {
    if ((activity_[v] += var_inc_) > 1e100) {
      for (Var u = 1; u <= n_vars(); ++u) activity_[u] *= 1e-100;
      var_inc_ *= 1e-100;
    }
    heap_.increased(v);
  }

  void bump_clause(CRef cr) {
    float a = cactivity(cr) + static_cast<float>(cla_inc_);
    set_cactivity(cr, a);
    if (a > 1e20F) {
      for (CRef l : learnts_) set_cactivity(l, cactivity(l) * 1e-20F);
      cla_inc_ *= 1e-20;
    }
  }

  Lit pick_branch() {
    Var next = 0;
    if (config_.rnd_decision_freq > 0.0 && !heap_.empty() && draw() < config_.rnd_decision_freq) {
      next = heap_.at(static_cast<std::size_t>(rng_() % heap_.size()));
    }
    while (next == 0 || assigns_[next] != Value::Undef) {
      if (heap_.empty()) return Lit();
      next = heap_.pop();
    }
    ++stats_.decisions;
    bool negative = phase_[next] != 0;
    if (config_.rnd_polarity_freq > 0.0 && draw() < config_.rnd_polarity_freq) negative = (rng_() & 1U) != 0;
    return Lit(next, negative);
  }

  // --- conflict analysis ----------------------------------------------------
  std::uint32_t abstract_level(Var v) const { return 1U << (levels_[v] & 31U); }

  void analyze(CRef confl, std::vector<Lit>& learnt, std::uint32_t& bt_level, std::uint32_t& lbd) {
    int path = 0;
    Lit p;
    learnt.clear();
    learnt.emplace_back();
    std::size_t index = trail_.size();
    do {
      if (clearnt(confl)) bump_clause(confl);
      const std::uint32_t sz = csize(confl);
      for (std::uint32_t j = p.valid() ? 1 : 0; j < sz; ++j) {
        Lit q = clit(confl, j);
        Var v = q.var();
        if (seen_[v] == 0 && levels_[v] > 0) {
          bump_var(v);
          seen_[v] = 1;
          if (levels_[v] >= decision_level()) {
            ++path;
          } else {
            learnt.push_back(q);
          }
        }
      }
      while (seen_[trail_[--index].var()] == 0) {
      }
      p = trail_[index];
      confl = reasons_[p.var()];
      seen_[p.var()] = 0;
      --path;
    } while (path > 0);
    learnt[0] = ~p;

    // Recursive minimization.
    to_clear_.assign(learnt.begin(), learnt.end());
    std::uint32_t abstract = 0;
    for (std::size_t i = 1; i < learnt.size(); ++i) abstract |= abstract_level(learnt[i].var());
    std::size_t j = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
      if (reasons_[learnt[i].var()] == kNoRef || !redundant(learnt[i], abstract)) learnt[j++] = learnt[i];
    }
    learnt.resize(j);

    if (learnt.size() == 1) {
      bt_level = 0;
    } else {
      std::size_t max_i = 1;
      for (std::size_t i = 2; i < learnt.size(); ++i) {
        if (levels_[learnt[i].var()] > levels_[learnt[max_i].var()]) max_i = i;
      }
      std::swap(learnt[1], learnt[max_i]);
      bt_level = levels_[learnt[1].var()];
    }
    for (Lit l : to_clear_) seen_[l.var()] = 0;

    ++lbd_stamp_;
    if (level_stamp_.size() <= decision_level()) level_stamp_.resize(decision_level() + 1, 0);
    lbd = 0;
    for (Lit l : learnt) {
      std::uint32_t lv = levels_[l.var()];
      if (level_stamp_[lv] != lbd_stamp_) {
        level_stamp_[lv] = lbd_stamp_;
        ++lbd;
      }
    }
  }

  bool redundant(Lit p, std::uint32_t abstract) {
    stack_.clear();
    stack_.push_back(p);
    const std::size_t top = to_clear_.size();
    while (!stack_.empty()) {
      CRef cr = reasons_[stack_.back().var()];
      stack_.pop_back();
      const std::uint32_t sz = csize(cr);
      for (std::uint32_t i = 1; i < sz; ++i) {
        Lit q = clit(cr, i);
        Var v = q.var();
        if (seen_[v] != 0 || levels_[v] == 0) continue;
        if (reasons_[v] != kNoRef && (abstract_level(v) & abstract) != 0) {
          seen_[v] = 1;
          stack_.push_back(q);
          to_clear_.push_back(q);
        } else {
          for (std::size_t k = top; k < to_clear_.size(); ++k) seen_[to_clear_[k].var()] = 0;
          to_clear_.resize(top);
          return false;
        }
      }
    }
    return true;
  }

  // Collects the assumptions responsible for `failed` being false.
  void analyze_final(Lit failed) {
    core_.clear();
    core_.push_back(failed);
    if (decision_level() == 0) return;
    seen_[failed.var()] = 1;
    for (std::size_t i = trail_.size(); i-- > trail_lim_[0];) {
      Var v = trail_[i].var();
      if (seen_[v] == 0) continue;
      CRef r = reasons_[v];
      if (r == kNoRef) {
        core_.push_back(trail_[i]);
      } else {
        for (std::uint32_t k = 1; k < csize(r); ++k) {
          Var u = clit(r, k).var();
          if (levels_[u] > 0) seen_[u] = 1;
        }
      }
      seen_[v] = 0;
    }
    seen_[failed.var()] = 0;
  }

  void reduce_learnts() {
    ++stats_.reductions;
    std::vector<CRef> sorted = learnts_;
    std::stable_sort(sorted.begin(), sorted.end(), [&](CRef a, CRef b) {
      if (clbd(a) != clbd(b)) return clbd(a) > clbd(b);
      return cactivity(a) < cactivity(b);
    });
    std::size_t target = sorted.size() / 2;
    std::size_t removed = 0;
    for (CRef cr : sorted) {
      if (removed >= target) break;
      if (clbd(cr) <= 2 || csize(cr) <= 2 || locked(cr)) continue;
      remove_clause(cr);
      ++removed;
    }
    std::erase_if(learnts_, [&](CRef cr) { return cdeleted(cr); });
  }

  bool within_budget() {
    if (config_.conflict_budget && conflicts_this_call_ >= *config_.conflict_budget) return false;
    if (deadline_ && (++clock_ticks_ & 255U) == 0 && std::chrono::steady_clock::now() >= *deadline_) {
      timed_out_ = true;
    }
    return !timed_out_ || !deadline_;
  }

  Result search(std::uint64_t conflict_limit) {
    std::uint64_t conflicts = 0;
    std::vector<Lit> learnt;
    for (;;) {
      CRef confl = propagate_units();
      if (confl != kNoRef) {
        ++conflicts;
        ++conflicts_this_call_;
        ++stats_.conflicts;
        if (decision_level() == 0) {
          ok_ = false;
          core_.clear();
          return Result::Unsat;
        }
        std::uint32_t bt_level = 0, lbd = 0;
        analyze(confl, learnt, bt_level, lbd);
        cancel_until(bt_level);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoRef);
        } else {
          CRef cr = alloc_clause(learnt, true, lbd);
          learnts_.push_back(cr);
          attach(cr);
          bump_clause(cr);
          enqueue(learnt[0], cr);
        }
        ++stats_.learned;
        var_inc_ /= kVarDecay;
        cla_inc_ /= kClauseDecay;
        continue;
      }

      if (conflicts >= conflict_limit || !within_budget()) {
        cancel_until(0);
        return Result::Undef;
      }
      if (stats_.conflicts >= next_reduce_) {
        next_reduce_ = stats_.conflicts + kFirstReduce + kReduceIncrement * stats_.reductions;
        reduce_learnts();
      }

      Lit next;
      while (decision_level() < assumptions_.size()) {
        Lit a = assumptions_[decision_level()];
        Value v = value(a);
        if (v == Value::True) {
          new_decision_level();
        } else if (v == Value::False) {
          analyze_final(a);
          return Result::Unsat;
        } else {
          next = a;
          break;
        }
      }
      if (!next.valid()) {
        next = pick_branch();
        if (!next.valid()) return Result::Sat;
      }
      new_decision_level();
      enqueue(next, kNoRef);
    }
  }

  SolverConfig config_;
  SolverStats stats_;
  bool ok_ = true;

  std::vector<std::uint32_t> arena_;
  std::size_t wasted_ = 0;
  std::vector<CRef> originals_;
  std::vector<CRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;

  std::vector<Value> assigns_;
  std::vector<std::uint32_t> levels_;
  std::vector<CRef> reasons_;
  std::vector<std::uint8_t> phase_;  // 1 = negative
  std::vector<std::uint8_t> seen_;
  std::vector<Lit> trail_;
  std::vector<std::uint32_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  detail::VarHeap heap_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  std::mt19937_64 rng_;

  std::vector<Lit> assumptions_;
  std::vector<Lit> core_;
  std::uint64_t conflicts_this_call_ = 0;
  std::uint64_t next_reduce_ = kFirstReduce;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint32_t clock_ticks_ = 0;
  bool timed_out_ = false;

  std::vector<Lit> scratch_;
  std::vector<Lit> to_clear_;
  std::vector<Lit> stack_;
  std::vector<std::uint32_t> level_stamp_;
  std::uint32_t lbd_stamp_ = 0;
};

}  // namespace ctforge::sat
