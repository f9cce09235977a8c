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

// Command implementations behind the ctforge executable. Kept in a header so
// the test suite can drive them in-process.

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "ctforge/error.hpp"
#include "ctforge/formats/acts.hpp"
#include "ctforge/formats/casa.hpp"
#include "ctforge/formats/dimacs.hpp"
#include "ctforge/formats/suite_csv.hpp"
#include "ctforge/mcac/bot.hpp"
#include "ctforge/mcac/ipog.hpp"
#include "ctforge/model/encoding.hpp"
#include "ctforge/model/tuples.hpp"
#include "ctforge/sutgen/generator.hpp"
#include "ctforge/verify/verifier.hpp"

namespace ctforge::cli {

namespace fs = std::filesystem;

// Exit codes. Stable; documented in the README.
enum Exit : int {
  kOk = 0,
  kError = 1,          // bad arguments, I/O, parse or model errors
  kGenFailed = 2,      // gen: the generator found no subproblem
  kInexpressible = 3,  // convert: target format cannot hold the model
  kInvalid = 4,        // verify/bench: the suite is not a valid MCAC
};

enum class Format { Acts, Xacts, Casa };

inline void init_logging() {
  auto logger = spdlog::get("ctforge");
  if (!logger) {
    logger = spdlog::stderr_color_mt("ctforge");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
  }
  const char* env = std::getenv("CTFORGE_LOG");
  std::string level = env ? formats::detail::lower(env) : "error";
  if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else {
    spdlog::set_level(spdlog::level::err);
  }
}

inline std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_text(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out || !(out << text)) throw Error("cannot write " + p.string());
}

inline Format parse_format(const std::string& name, const fs::path& p) {
  std::string f = name;
  if (f.empty()) {
    auto ext = formats::detail::lower(p.extension().string());
    if (ext == ".acts") return Format::Acts;
    if (ext == ".xacts") return Format::Xacts;
    if (ext == ".model") return Format::Casa;
    throw Error("cannot infer the format of " + p.string() + "; pass --format");
  }
  if (f == "acts") return Format::Acts;
  if (f == "xacts") return Format::Xacts;
  if (f == "casa") return Format::Casa;
  throw Error("unknown format '" + f + "'");
}

// A CASA model lives in two files: X.model and X.constraints.
inline fs::path casa_constraints_path(const fs::path& model) {
  return fs::path(model).replace_extension(".constraints");
}

inline SutModel load_model(const fs::path& p, Format f) {
  switch (f) {
    case Format::Acts:
      return formats::parse_acts(read_text(p));
    case Format::Xacts:
      return formats::parse_extended_acts(read_text(p));
    case Format::Casa: {
      auto cp = casa_constraints_path(p);
      return formats::parse_casa(read_text(p), fs::exists(cp) ? read_text(cp) : std::string());
    }
  }
  throw Error("unreachable");
}

inline void save_model(const SutModel& m, const fs::path& p, Format f, std::size_t t) {
  switch (f) {
    case Format::Acts:
      write_text(p, formats::write_acts(m));
      return;
    case Format::Xacts:
      write_text(p, formats::write_extended_acts(m));
      return;
    case Format::Casa: {
      auto files = formats::write_casa(m, t);
      write_text(p, files.model);
      write_text(casa_constraints_path(p), files.constraints);
      return;
    }
  }
}

struct Census {
  std::uint64_t total = 0;
  std::uint64_t allowed = 0;
  std::uint64_t forbidden = 0;
};

inline Census census(const SutModel& m, std::size_t t) {
  if (t < 1 || t > m.n_params()) throw StrengthOutOfRange(t, m.n_params());
  Census c;
  CnfEncoding enc = encode(m);
  sat::Solver solver(enc.formula());
  for_each_tuple(m, t, [&](const ValueTuple& tuple) {
    ++c.total;
    ++(is_allowed(tuple, enc, solver) ? c.allowed : c.forbidden);
  });
  return c;
}

enum class Algorithm { Ipog, Bot, Pbot };

inline Algorithm parse_algorithm(const std::string& name) {
  if (name == "ipog") return Algorithm::Ipog;
  if (name == "bot") return Algorithm::Bot;
  if (name == "pbot") return Algorithm::Pbot;
  throw Error("unknown algorithm '" + name + "'");
}

struct BuildOptions {
  Algorithm alg = Algorithm::Ipog;
  std::size_t t = 2;
  std::uint64_t cb = 100;
  std::optional<std::uint64_t> pool_bytes;
  std::uint64_t seed = 0;
};

inline TestSuite run_builder(const SutModel& m, const BuildOptions& o, mcac::BuildStats* stats) {
  if (o.alg == Algorithm::Ipog) return mcac::build_ipog(m, o.t, {o.seed}, stats);
  mcac::BotConfig cfg;
  cfg.cb = o.cb;
  cfg.seed = o.seed;
  if (o.alg == Algorithm::Bot) return mcac::build_bot(m, o.t, cfg, stats);
  cfg.pool_budget = o.pool_bytes;
  auto suite = mcac::build_pbot(m, o.t, cfg, stats);
  if (!o.pool_bytes) suite.meta.algorithm = "pbot";
  return suite;
}

// key=value record of one build, in the spirit of a size/time results table.
inline std::string build_record(const std::string& model, const TestSuite& s, const mcac::BuildStats& st,
                                const verify::VerifyReport& rep) {
  std::ostringstream os;
  os << "model=" << model << '\n'
     << "algorithm=" << s.meta.algorithm << '\n'
     << "t=" << s.meta.strength << '\n'
     << "seed=" << s.meta.seed << '\n'
     << "size=" << s.size() << '\n'
     << "wall_ms=" << s.meta.wall_ms << '\n'
     << "total=" << rep.total << '\n'
     << "allowed=" << rep.allowed << '\n'
     << "forbidden=" << rep.forbidden << '\n'
     << "valid=" << (rep.valid() ? 1 : 0) << '\n'
     << "sat_calls=" << st.sat_calls << '\n'
     << "memo_hits=" << st.memo_hits << '\n'
     << "amendments=" << st.amendments << '\n'
     << "budget_exhausted=" << st.budget_exhausted << '\n'
     << "slices=" << st.slices << '\n'
     << "peak_pool_bytes=" << st.peak_pool_bytes << '\n';
  return os.str();
}

struct GenArgs {
  std::string cnf;
  std::string out;
  std::string name;
  sutgen::GenConfig cfg;
};

inline sutgen::GenResult run_gen(const GenArgs& a, std::ostream& out, std::ostream& err, int& code) {
  auto doc = formats::parse_dimacs_doc(read_text(a.cnf));
  for (const auto& w : doc.warnings) spdlog::warn("{}: {}", a.cnf, w);
  auto name = a.name.empty() ? fs::path(a.cnf).stem().string() : a.name;
  auto res = sutgen::generate(doc.formula, a.cfg, name);
  for (const auto& step : res.search.steps) {
    if (step.conflicts) spdlog::debug("|A|={} c={}", step.assumptions, *step.conflicts);
  }
  if (!res.ok()) {
    err << "generation failed: " << res.reason << '\n';
    code = kGenFailed;
    return res;
  }
  fs::path dir(a.out);
  write_text(dir / (name + ".xacts"), formats::write_extended_acts(res.model));
  write_text(dir / (name + ".provenance"), sutgen::write_provenance(res.provenance));
  out << "model=" << (dir / (name + ".xacts")).string() << '\n'
      << "params=" << res.model.n_params() << '\n'
      << "aux=" << res.model.aux_vars.size() << '\n'
      << "constraints=" << res.model.constraints.size() << '\n'
      << "measured_c=" << res.provenance.measured_c << '\n'
      << "tries=" << res.provenance.tries_used << '\n';
  code = kOk;
  return res;
}

inline void add_gen_options(CLI::App& cmd, GenArgs& a) {
  cmd.add_option("--n", a.cfg.n, "number of parameters")->capture_default_str();
  cmd.add_option("--cmin", a.cfg.c_min, "lower bound on average conflicts")->capture_default_str();
  cmd.add_option("--cmax", a.cfg.c_max, "upper bound on average conflicts")->capture_default_str();
  cmd.add_option("--delta", a.cfg.delta_a, "assumptions added when too hard")->capture_default_str();
  cmd.add_option("--nabla", a.cfg.nabla_a, "assumptions dropped when too easy")->capture_default_str();
  cmd.add_option("--seeds", a.cfg.seeds, "solver seeds")->delimiter(',')->capture_default_str();
  cmd.add_option("--max-tries", a.cfg.max_tries)->capture_default_str();
  cmd.add_option("--budget", a.cfg.query_budget, "conflict budget per query")->capture_default_str();
  cmd.add_option("--wall-timeout", a.cfg.query_timeout_ms, "wall-clock cap per query in ms");
  cmd.add_option("--gen-seed", a.cfg.gen_seed, "seed for all generator sampling")->capture_default_str();
}

struct BenchJob {
  std::string model;
  Algorithm alg;
};

struct BenchRow {
  std::string model;
  std::string alg;
  std::size_t t = 0;
  std::size_t size = 0;
  double wall_ms = 0;
  verify::VerifyReport report;
};

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  init_logging();
  CLI::App app{"Combinatorial testing toolkit: SUT generation, MCAC construction and verification", "ctforge"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "carve a Boolean SUT model out of a DIMACS CNF");
  gen_cmd->add_option("--cnf", gen.cnf, "input DIMACS file")->required();
  gen_cmd->add_option("--out", gen.out, "output directory")->required();
  gen_cmd->add_option("--name", gen.name, "base name of the output files (default: CNF stem)");
  add_gen_options(*gen_cmd, gen);

  std::string model_path, format_name, out_path, stats_path, suite_path, alg_name = "ipog";
  BuildOptions bo;
  auto* build_cmd = app.add_subcommand("build", "build a covering array with constraints");
  build_cmd->add_option("--model", model_path)->required();
  build_cmd->add_option("--format", format_name, "acts|xacts|casa (default: from extension)");
  build_cmd->add_option("--alg", alg_name, "ipog|bot|pbot")->capture_default_str();
  build_cmd->add_option("--t", bo.t, "strength")->capture_default_str();
  build_cmd->add_option("--cb", bo.cb, "conflict budget of limited checks")->capture_default_str();
  build_cmd->add_option("--pool-bytes", bo.pool_bytes, "pbot pool budget");
  build_cmd->add_option("--seed", bo.seed)->capture_default_str();
  build_cmd->add_option("--out", out_path, "suite CSV")->required();
  build_cmd->add_option("--stats", stats_path, "key=value build record");

  auto* verify_cmd = app.add_subcommand("verify", "check that a suite is a valid MCAC");
  verify_cmd->add_option("--model", model_path)->required();
  verify_cmd->add_option("--format", format_name);
  verify_cmd->add_option("--t", bo.t)->capture_default_str();
  verify_cmd->add_option("--suite", suite_path)->required();

  std::string to_name;
  std::optional<std::size_t> casa_t;
  auto* convert_cmd = app.add_subcommand("convert", "translate a model between acts, xacts and casa");
  convert_cmd->add_option("--in", model_path)->required();
  convert_cmd->add_option("--from", format_name);
  convert_cmd->add_option("--to", to_name)->required();
  convert_cmd->add_option("--out", out_path)->required();
  convert_cmd->add_option("--t", casa_t, "strength written into CASA output");

  auto* stats_cmd = app.add_subcommand("stats", "count total, allowed and forbidden t-tuples");
  stats_cmd->add_option("--model", model_path)->required();
  stats_cmd->add_option("--format", format_name);
  stats_cmd->add_option("--t", bo.t)->capture_default_str();

  GenArgs bench;
  bench.cfg.n = 20;
  std::size_t bench_count = 5, jobs = 1;
  std::vector<std::string> bench_algs{"ipog", "bot"};
  auto* bench_cmd = app.add_subcommand("bench", "generate SUTs, build with each algorithm, tabulate");
  bench_cmd->add_option("--cnf", bench.cnf)->required();
  bench_cmd->add_option("--out", bench.out)->required();
  bench_cmd->add_option("--count", bench_count, "number of models")->capture_default_str();
  bench_cmd->add_option("--algs", bench_algs)->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--t", bo.t)->capture_default_str();
  bench_cmd->add_option("--cb", bo.cb)->capture_default_str();
  bench_cmd->add_option("--seed", bo.seed, "builder seed")->capture_default_str();
  bench_cmd->add_option("--jobs", jobs, "parallel builds")->capture_default_str()->check(CLI::PositiveNumber);
  add_gen_options(*bench_cmd, bench);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*gen_cmd) {
      int code = kOk;
      run_gen(gen, out, err, code);
      return code;
    }

    if (*build_cmd) {
      auto fmt = parse_format(format_name, model_path);
      bo.alg = parse_algorithm(alg_name);
      auto m = load_model(model_path, fmt);
      mcac::BuildStats st;
      auto suite = run_builder(m, bo, &st);
      write_text(out_path, formats::write_suite_csv(suite, m));
      auto rep = verify::verify_mcac(m, bo.t, suite);
      auto record = build_record(model_path, suite, st, rep);
      if (!stats_path.empty()) write_text(stats_path, record);
      out << record;
      return kOk;
    }

    if (*verify_cmd) {
      auto m = load_model(model_path, parse_format(format_name, model_path));
      auto suite = formats::read_suite_csv(read_text(suite_path), m);
      auto rep = verify::verify_mcac(m, bo.t, suite);
      out << verify::to_string(rep, m);
      return rep.valid() ? kOk : kInvalid;
    }

    if (*convert_cmd) {
      auto m = load_model(model_path, parse_format(format_name, model_path));
      auto to = parse_format(to_name, out_path);
      try {
        save_model(m, out_path, to, casa_t.value_or(m.strength_hint.value_or(2)));
      } catch (const Inexpressible& e) {
        err << "error: " << e.what() << '\n';
        return kInexpressible;
      }
      return kOk;
    }

    if (*stats_cmd) {
      auto m = load_model(model_path, parse_format(format_name, model_path));
      std::size_t values = 0;
      for (auto g : m.domain_sizes()) values += g;
      auto c = census(m, bo.t);
      out << "params=" << m.n_params() << " values=" << values << " aux=" << m.aux_vars.size()
          << " constraints=" << m.constraints.size() << " t=" << bo.t << '\n'
          << "total=" << c.total << " allowed=" << c.allowed << " forbidden=" << c.forbidden << '\n';
      return kOk;
    }

    if (*bench_cmd) {
      std::vector<Algorithm> algs;
      for (const auto& a : bench_algs) algs.push_back(parse_algorithm(a));
      auto base_seed = bench.cfg.gen_seed;
      auto stem = fs::path(bench.cnf).stem().string();
      std::vector<std::pair<std::string, SutModel>> models;
      for (std::size_t i = 0; i < bench_count; ++i) {
        GenArgs g = bench;
        g.cfg.gen_seed = base_seed + i;
        g.name = stem + "_" + std::to_string(i + 1);
        int code = kOk;
        std::ostringstream quiet;
        auto res = run_gen(g, quiet, err, code);
        if (code != kOk) return code;
        spdlog::info("generated {} ({} params, {} aux)", g.name, res.model.n_params(), res.model.aux_vars.size());
        models.emplace_back(g.name, std::move(res.model));
      }

      std::vector<BenchJob> queue;
      for (const auto& [name, m] : models) {
        for (auto a : algs) queue.push_back({name, a});
      }
      std::vector<BenchRow> rows(queue.size());
      std::mutex io;
      auto work = [&](std::size_t k) {
        const auto& job = queue[k];
        const SutModel* m = nullptr;
        for (const auto& [name, model] : models) {
          if (name == job.model) m = &model;
        }
        BuildOptions o = bo;
        o.alg = job.alg;
        mcac::BuildStats st;
        auto suite = run_builder(*m, o, &st);
        auto rep = verify::verify_mcac(*m, o.t, suite);
        rows[k] = {job.model, suite.meta.algorithm, o.t, suite.size(), suite.meta.wall_ms, rep};
        std::lock_guard lock(io);
        auto file = fs::path(bench.out) / (job.model + "_" + suite.meta.algorithm);
        write_text(file.string() + ".csv", formats::write_suite_csv(suite, *m));
        write_text(file.string() + ".stats", build_record(job.model, suite, st, rep));
      };
      for (std::size_t start = 0; start < queue.size(); start += jobs) {
        std::vector<std::future<void>> running;
        for (std::size_t k = start; k < std::min(queue.size(), start + jobs); ++k) {
          running.push_back(std::async(std::launch::async, work, k));
        }
        for (auto& f : running) f.get();
      }

      std::ostringstream table;
      table << "model,algorithm,t,size,wall_ms,total,allowed,forbidden,valid\n";
      bool all_valid = true;
      for (const auto& r : rows) {
        table << r.model << ',' << r.alg << ',' << r.t << ',' << r.size << ',' << r.wall_ms << ','
              << r.report.total << ',' << r.report.allowed << ',' << r.report.forbidden << ','
              << (r.report.valid() ? 1 : 0) << '\n';
        out << "model=" << r.model << " algorithm=" << r.alg << " size=" << r.size << " wall_ms=" << r.wall_ms
            << " valid=" << (r.report.valid() ? 1 : 0) << '\n';
        all_valid = all_valid && r.report.valid();
      }
      write_text(fs::path(bench.out) / "stats.csv", table.str());
      return all_valid ? kOk : kInvalid;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace ctforge::cli
