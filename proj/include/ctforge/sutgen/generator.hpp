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

// Benchmark generation: carve a satisfiable subproblem of calibrated hardness
// out of a SAT instance and turn it into a SUT with Boolean parameters.
//
// Hardness is the mean number of conflicts the incremental solver needs over
// a list of seeds. Assumptions taken from solver models are added while the
// subproblem is too hard and removed while it is too easy or leaves fewer
// than n unfixed variables. The unit-propagation closure of the final
// assumptions is then fixed, the formula simplified, and n of the remaining
// variables become parameters; the rest become auxiliaries.

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ctforge/error.hpp"
#include "ctforge/model/sut.hpp"
#include "ctforge/sat/solver.hpp"

namespace ctforge::sutgen {

struct GenConfig {
  std::size_t n = 10;
  std::uint64_t c_min = 2500;
  std::uint64_t c_max = 5000;
  std::size_t delta_a = 10;
  std::size_t nabla_a = 5;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::size_t max_tries = 100;
  // Per-solve conflict cap. An exhausted query counts as unsatisfiable.
  std::uint64_t query_budget = 10'000'000;
  // Optional per-solve wall-clock cap; makes results timing dependent.
  std::optional<std::uint64_t> query_timeout_ms;
  std::uint64_t gen_seed = 0;
  double rnd_decision_freq = 0.5;
  double rnd_polarity_freq = 0.5;

  void validate() const {
    if (n < 1) throw Error("n must be at least 1");
    if (c_min >= c_max) throw Error("c_min must be below c_max");
    if (delta_a < 1 || nabla_a < 1) throw Error("assumption steps must be at least 1");
    if (seeds.empty()) throw Error("at least one seed is required");
    if (max_tries < 1) throw Error("max_tries must be at least 1");
    if (query_budget < 1) throw Error("query_budget must be at least 1");
  }

  sat::SolverConfig solver_config() const {
    sat::SolverConfig sc;
    sc.rnd_decision_freq = rnd_decision_freq;
    sc.rnd_polarity_freq = rnd_polarity_freq;
    sc.conflict_budget = query_budget;
    sc.wall_timeout_ms = query_timeout_ms;
    return sc;
  }
};

struct Measurement {
  std::optional<sat::Assignment> model;  // empty: unsatisfiable or out of budget
  double conflicts = 0;                  // mean over the seeds that ran
  std::vector<std::uint64_t> per_seed;
};

// Solves under `assumps` once per seed and returns one of the models, picked
// uniformly with `rng`, and the mean conflict count. Learned clauses stay in
// the solver between calls.
template <typename Rng>
Measurement solve_subproblem(sat::Solver& solver, std::span<const sat::Lit> assumps,
                             std::span<const std::uint64_t> seeds, Rng& rng) {
  Measurement m;
  std::vector<sat::Assignment> models;
  double total = 0;
  for (std::uint64_t seed : seeds) {
    solver.set_seed(seed);
    auto r = solver.solve(assumps);
    m.per_seed.push_back(r.n_conflicts);
    total += static_cast<double>(r.n_conflicts);
    if (!r.sat()) {
      m.conflicts = total / static_cast<double>(m.per_seed.size());
      return m;
    }
    models.push_back(std::move(*r.model));
  }
  m.conflicts = total / static_cast<double>(seeds.size());
  std::uniform_int_distribution<std::size_t> pick(0, models.size() - 1);
  m.model = std::move(models[pick(rng)]);
  return m;
}

enum class Outcome : std::uint8_t { Success, Fail };

struct SearchStep {
  std::size_t assumptions = 0;  // |A| after the step
  std::optional<double> conflicts;  // set when the step re-measured
};

struct Subproblem {
  Outcome outcome = Outcome::Fail;
  std::string reason;               // why it failed
  std::vector<sat::Lit> fixed;      // UP closure of the final assumptions
  std::vector<sat::Lit> assumptions;
  double conflicts = 0;             // last measurement
  std::size_t tries = 0;
  std::vector<SearchStep> steps;

  bool ok() const { return outcome == Outcome::Success; }
};

namespace detail {

// Removes up to k elements chosen uniformly without replacement.
template <typename Rng>
void remove_sample(std::vector<sat::Lit>& v, std::size_t k, Rng& rng) {
  k = std::min(k, v.size());
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
    std::size_t j = pick(rng);
    v[j] = v.back();
    v.pop_back();
  }
}

// Up to k elements of `pool` chosen uniformly without replacement.
template <typename Rng>
std::vector<sat::Lit> sample(std::vector<sat::Lit> pool, std::size_t k, Rng& rng) {
  k = std::min(k, pool.size());
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace detail

template <typename Rng>
Subproblem find_satisfiable_subproblem(const sat::CnfFormula& phi, const GenConfig& cfg, Rng& rng) {
  cfg.validate();
  Subproblem out;
  sat::Solver solver(phi, cfg.solver_config());
  std::vector<sat::Lit> A;

  auto unfixed = [&]() -> std::optional<std::size_t> {
    auto p = solver.propagate(A);
    if (p.is_conflict()) return std::nullopt;
    return static_cast<std::size_t>(solver.n_vars()) - p.literals().size();
  };
  auto fail = [&](std::string why) {
    out.outcome = Outcome::Fail;
    out.reason = std::move(why);
    out.assumptions = A;
    return out;
  };

  Measurement meas = solve_subproblem(solver, A, cfg.seeds, rng);
  out.conflicts = meas.conflicts;
  out.tries = 1;
  out.steps.push_back({0, meas.conflicts});
  if (!meas.model) return fail("formula is unsatisfiable or exceeds the query budget");
  auto free_vars = unfixed();
  if (!free_vars || *free_vars < cfg.n) return fail("fewer than n unfixed variables");
  if (meas.conflicts < static_cast<double>(cfg.c_min)) return fail("formula is easier than c_min");

  sat::Assignment model = *meas.model;
  double c = meas.conflicts;
  while (out.tries < cfg.max_tries) {
    free_vars = unfixed();
    if (!free_vars) return fail("assumptions became inconsistent");
    if (*free_vars < cfg.n || c < static_cast<double>(cfg.c_min)) {
      if (A.empty()) return fail("cannot relax the subproblem further");
      detail::remove_sample(A, cfg.nabla_a, rng);
    } else if (c > static_cast<double>(cfg.c_max)) {
      std::vector<sat::Lit> pool;
      for (sat::Lit l : model.literals()) {
        if (std::find(A.begin(), A.end(), l) == A.end()) pool.push_back(l);
      }
      for (sat::Lit l : detail::sample(std::move(pool), cfg.delta_a, rng)) A.push_back(l);
    } else {
      out.outcome = Outcome::Success;
      out.fixed = solver.propagate(A).literals();
      out.assumptions = A;
      out.conflicts = c;
      return out;
    }
    SearchStep step{A.size(), std::nullopt};
    free_vars = unfixed();
    if (free_vars && *free_vars >= cfg.n) {
      meas = solve_subproblem(solver, A, cfg.seeds, rng);
      if (meas.model) {
        model = std::move(*meas.model);
        c = meas.conflicts;
      } else {
        // A is a subset of an earlier model, so this only happens when a
        // query ran out of budget: treat the subproblem as too hard.
        c = std::numeric_limits<double>::infinity();
      }
      out.conflicts = c;
      step.conflicts = c;
      ++out.tries;
    }
    out.steps.push_back(step);
  }
  return fail("max_tries reached");
}

inline Subproblem find_satisfiable_subproblem(const sat::CnfFormula& phi, const GenConfig& cfg) {
  std::mt19937_64 rng(cfg.gen_seed);
  return find_satisfiable_subproblem(phi, cfg, rng);
}

struct Simplified {
  sat::CnfFormula formula;
  // rename[old] = new variable, 0 if the variable is gone.
  std::vector<sat::Var> rename;
  // Literals fixed by unit propagation, in propagation order.
  std::vector<sat::Lit> fixed;
};

// Adds `fixed` as unit clauses, propagates to a fixpoint, drops satisfied
// clauses and false literals, and renames the surviving variables densely
// in their original order. Throws if propagation hits a conflict.
inline Simplified simplify(const sat::CnfFormula& phi, std::span<const sat::Lit> fixed) {
  using sat::Lit;
  using sat::Var;
  Var n = phi.n_vars;
  for (Lit l : fixed) n = std::max(n, l.var());
  // Duplicate literals are dropped (first occurrence kept), tautologies skipped.
  std::vector<std::vector<Lit>> clauses;
  clauses.reserve(phi.clauses.size());
  std::vector<std::uint32_t> stamp(2 * (n + 1), 0);
  std::uint32_t round = 0;
  for (const auto& c : phi.clauses) {
    ++round;
    std::vector<Lit> d;
    bool taut = false;
    for (Lit l : c) {
      if (stamp[(~l).code()] == round) taut = true;
      if (stamp[l.code()] == round) continue;
      stamp[l.code()] = round;
      d.push_back(l);
    }
    if (!taut) clauses.push_back(std::move(d));
  }

  // value: 0 undefined, 1 true, -1 false (per variable)
  std::vector<std::int8_t> value(n + 1, 0);
  std::vector<std::vector<std::uint32_t>> occurs(2 * (n + 1));
  std::vector<std::uint32_t> open(clauses.size());
  std::vector<bool> satisfied(clauses.size(), false);
  for (std::uint32_t i = 0; i < clauses.size(); ++i) {
    open[i] = static_cast<std::uint32_t>(clauses[i].size());
    for (Lit l : clauses[i]) occurs[l.code()].push_back(i);
  }

  Simplified out;
  std::vector<Lit> queue;
  auto lit_value = [&](Lit l) { return l.negative() ? -value[l.var()] : value[l.var()]; };
  auto enqueue = [&](Lit l) {
    int v = lit_value(l);
    if (v == -1) throw Error("simplify: fixed literals conflict with the formula");
    if (v == 1) return;
    value[l.var()] = l.negative() ? -1 : 1;
    out.fixed.push_back(l);
    queue.push_back(l);
  };
  for (Lit l : fixed) enqueue(l);
  for (std::uint32_t i = 0; i < clauses.size(); ++i) {
    if (clauses[i].empty()) throw Error("simplify: formula contains the empty clause");
    if (clauses[i].size() == 1) enqueue(clauses[i][0]);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Lit l = queue[head];
    for (auto ci : occurs[l.code()]) satisfied[ci] = true;
    for (auto ci : occurs[(~l).code()]) {
      if (satisfied[ci]) continue;
      if (--open[ci] == 0) throw Error("simplify: fixed literals conflict with the formula");
      if (open[ci] == 1) {
        for (Lit k : clauses[ci]) {
          if (lit_value(k) == 0) {
            enqueue(k);
            break;
          }
        }
      }
    }
  }

  std::vector<bool> used(n + 1, false);
  std::vector<std::vector<Lit>> kept;
  for (std::uint32_t i = 0; i < clauses.size(); ++i) {
    bool sat = false;
    std::vector<Lit> rest;
    for (Lit k : clauses[i]) {
      int v = lit_value(k);
      if (v == 1) sat = true;
      if (v == 0) rest.push_back(k);
    }
    if (sat) continue;
    for (Lit k : rest) used[k.var()] = true;
    kept.push_back(std::move(rest));
  }
  out.rename.assign(n + 1, 0);
  Var next = 0;
  for (Var v = 1; v <= n; ++v) {
    if (used[v]) out.rename[v] = ++next;
  }
  out.formula.n_vars = next;
  for (auto& c : kept) {
    sat::Clause d;
    for (Lit k : c) d.emplace_back(out.rename[k.var()], k.negative());
    out.formula.clauses.push_back(std::move(d));
  }
  return out;
}

struct Provenance {
  std::string source;
  std::size_t n = 0;
  std::uint64_t c_min = 0;
  std::uint64_t c_max = 0;
  double measured_c = 0;
  std::vector<std::uint64_t> seeds;
  std::uint64_t gen_seed = 0;
  std::size_t tries_used = 0;
  std::size_t assumptions_final = 0;
  std::size_t fixed = 0;
  sat::Var source_vars = 0;
  std::size_t source_clauses = 0;
  // role[old var] = "p3", "a7" or "" if eliminated.
  std::vector<std::string> role;
};

struct GenResult {
  Outcome outcome = Outcome::Fail;
  std::string reason;
  SutModel model;
  sat::CnfFormula simplified;  // φ′ in the renamed variables
  // params[i] = φ′ variable of parameter i; aux likewise.
  std::vector<sat::Var> params;
  std::vector<sat::Var> aux;
  Provenance provenance;
  Subproblem search;

  bool ok() const { return outcome == Outcome::Success; }
};

inline GenResult generate(const sat::CnfFormula& phi, const GenConfig& cfg, const std::string& source = "") {
  cfg.validate();
  std::mt19937_64 rng(cfg.gen_seed);
  GenResult res;
  res.provenance.source = source;
  res.provenance.n = cfg.n;
  res.provenance.c_min = cfg.c_min;
  res.provenance.c_max = cfg.c_max;
  res.provenance.seeds = cfg.seeds;
  res.provenance.gen_seed = cfg.gen_seed;
  res.provenance.source_vars = phi.n_vars;
  res.provenance.source_clauses = phi.clauses.size();

  res.search = find_satisfiable_subproblem(phi, cfg, rng);
  res.provenance.tries_used = res.search.tries;
  res.provenance.assumptions_final = res.search.assumptions.size();
  res.provenance.measured_c = res.search.conflicts;
  if (!res.search.ok()) {
    res.reason = res.search.reason;
    return res;
  }

  Simplified s = simplify(phi, res.search.fixed);
  res.provenance.fixed = s.fixed.size();
  if (s.formula.n_vars < cfg.n) {
    res.reason = "fewer than n variables left after simplification";
    return res;
  }
  res.simplified = s.formula;

  std::vector<sat::Var> vars(s.formula.n_vars);
  for (sat::Var v = 1; v <= s.formula.n_vars; ++v) vars[v - 1] = v;
  for (std::size_t i = 0; i < cfg.n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, vars.size() - 1);
    std::swap(vars[i], vars[pick(rng)]);
  }
  res.params.assign(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(cfg.n));
  res.aux.assign(vars.begin() + static_cast<std::ptrdiff_t>(cfg.n), vars.end());
  std::sort(res.aux.begin(), res.aux.end());

  // role of each φ′ variable: parameter index or auxiliary index
  std::vector<std::pair<bool, std::size_t>> role(s.formula.n_vars + 1);
  SutModel& m = res.model;
  m.name = source.empty() ? "SUT" : source;
  for (std::size_t i = 0; i < res.params.size(); ++i) {
    m.parameters.push_back({"p" + std::to_string(i + 1), {"0", "1"}, ParamKind::Bool});
    role[res.params[i]] = {true, i};
  }
  for (std::size_t i = 0; i < res.aux.size(); ++i) {
    m.aux_vars.push_back("a" + std::to_string(i + 1));
    role[res.aux[i]] = {false, i};
  }
  for (const auto& clause : s.formula.clauses) {
    std::vector<Expr> atoms;
    for (sat::Lit l : clause) {
      auto [is_param, idx] = role[l.var()];
      atoms.push_back(is_param ? Expr::eq(idx, l.negative() ? 0 : 1) : Expr::aux_ref(idx, l.positive()));
    }
    m.constraints.push_back(Expr::any(std::move(atoms)));
  }

  res.provenance.role.assign(phi.n_vars + 1, "");
  for (sat::Var v = 1; v <= phi.n_vars && v < s.rename.size(); ++v) {
    sat::Var nv = s.rename[v];
    if (nv == 0) continue;
    auto [is_param, idx] = role[nv];
    res.provenance.role[v] = (is_param ? "p" : "a") + std::to_string(idx + 1);
  }
  res.outcome = Outcome::Success;
  return res;
}

// key=value sidecar describing how a model was generated.
inline std::string write_provenance(const Provenance& p) {
  std::array<char, 32> buf{};
  auto end = std::to_chars(buf.data(), buf.data() + buf.size(), p.measured_c).ptr;
  std::ostringstream os;
  os << "source=" << p.source << '\n'
     << "source_vars=" << p.source_vars << '\n'
     << "source_clauses=" << p.source_clauses << '\n'
     << "n=" << p.n << '\n'
     << "c_min=" << p.c_min << '\n'
     << "c_max=" << p.c_max << '\n'
     << "measured_c=" << std::string_view(buf.data(), static_cast<std::size_t>(end - buf.data())) << '\n'
     << "seeds=";
  for (std::size_t i = 0; i < p.seeds.size(); ++i) os << (i ? "," : "") << p.seeds[i];
  os << '\n'
     << "gen_seed=" << p.gen_seed << '\n'
     << "tries_used=" << p.tries_used << '\n'
     << "assumptions_final=" << p.assumptions_final << '\n'
     << "fixed=" << p.fixed << '\n'
     << "rename=";
  bool first = true;
  for (std::size_t v = 1; v < p.role.size(); ++v) {
    if (p.role[v].empty()) continue;
    os << (first ? "" : ",") << v << ':' << p.role[v];
    first = false;
  }
  os << '\n';
  return os.str();
}

}  // namespace ctforge::sutgen
