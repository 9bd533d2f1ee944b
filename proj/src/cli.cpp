#include "smc/cli.hpp"

#include <glob.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "smc/asymmetric_approx.hpp"
#include "smc/generate.hpp"
#include "smc/io.hpp"
#include "smc/metric_approx.hpp"
#include "smc/onetwo_approx.hpp"
#include "smc/probe.hpp"

namespace smc {

Algorithm parse_algorithm(const std::string& s) {
  if (s == "metric3") return Algorithm::metric3;
  if (s == "onetwo119") return Algorithm::onetwo119;
  if (s == "onetwo76") return Algorithm::onetwo76;
  if (s == "asym-log") return Algorithm::asym_log;
  if (s == "prior-sf4") return Algorithm::prior_sf4;
  throw PreconditionError("unknown algorithm: " + s);
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::metric3: return "metric3";
    case Algorithm::onetwo119: return "onetwo119";
    case Algorithm::onetwo76: return "onetwo76";
    case Algorithm::asym_log: return "asym-log";
    case Algorithm::prior_sf4: return "prior-sf4";
  }
  return "?";
}

namespace {

std::string fmt(const Instance& inst, Weight w) { return format_rational(inst.to_rational(w)); }

}  // namespace

SolveResult run_algorithm(Algorithm a, const Instance& inst, TieBreak tb, std::ostream* stages) {
  SolveResult r;
  std::ostringstream stats;
  switch (a) {
    case Algorithm::metric3: {
      MetricTrace t;
      r.cover = approx_metric(inst, JoinMode::t_join, &t);
      r.bound = 3;
      stats << "w_G=" << fmt(inst, t.w_rounded) << " w_G'=" << fmt(inst, t.w_pruned) << " |T|=" << t.odd.size()
            << " w_J=" << fmt(inst, t.w_tjoin) << " w_M=" << fmt(inst, t.w_matching);
      if (stages) {
        *stages << "# G " << t.rounded.edge_count() << " edges, weight " << fmt(inst, t.w_rounded) << "\n"
                << "# G' " << t.pruned.edge_count() << " edges, weight " << fmt(inst, t.w_pruned) << "\n"
                << "# T";
        for (int v : t.odd) *stages << ' ' << v;
        *stages << "\n# J weight " << fmt(inst, t.w_tjoin) << ", M weight " << fmt(inst, t.w_matching) << "\n"
                << "# H weight " << fmt(inst, t.w_euler) << "\n";
      }
      break;
    }
    case Algorithm::onetwo119:
    case Algorithm::onetwo76: {
      const auto variant = a == Algorithm::onetwo119 ? OneTwoVariant::ratio_11_9 : OneTwoVariant::ratio_7_6;
      OneTwoTrace t;
      r.cover = approx_onetwo(inst, variant, tb, &t);
      r.bound = variant == OneTwoVariant::ratio_11_9 ? Rational(11, 9) : Rational(7, 6);
      stats << "w_F=" << fmt(inst, t.w_f) << " e2=" << t.e2_f << " c_p=" << t.c_p
            << " phase1=+" << fmt(inst, t.phase1_log.virtual_delta) << " phase2=+"
            << fmt(inst, t.phase2_log.virtual_delta) << " candidates=" << t.candidates;
      if (stages) write_stages(*stages, inst, t);
      break;
    }
    case Algorithm::asym_log: {
      AsymTrace t;
      r.cover = approx_asymmetric(inst, &t);
      r.iterations = t.factor_count();
      r.bound = t.factor_count();
      stats << "limit=" << asymmetric_iteration_limit(inst.size()) << " fallbacks=" << t.fallbacks;
      if (stages) {
        *stages << "# C0 weight " << fmt(inst, t.initial_weight) << "\n";
        for (std::size_t i = 0; i < t.iterations.size(); ++i) {
          const auto& it = t.iterations[i];
          *stages << "# iteration " << i + 1 << ": eta " << it.eta_before << " -> " << it.eta_after << ", |R| "
                  << it.r.vertices.size() << ", inner weight " << fmt(inst, it.inner_weight) << ", components "
                  << it.components << ", fallbacks " << it.fallback_components << ", weight "
                  << fmt(inst, it.weight_after) << "\n";
        }
      }
      break;
    }
    case Algorithm::prior_sf4: {
      EdgeSubgraph forest;
      r.cover = approx_prior_sf4(inst, &forest);
      r.bound = 4;
      stats << "w_forest=" << fmt(inst, forest.weight(inst));
      if (stages) *stages << "# forest " << forest.edge_count() << " edges, weight " << fmt(inst, forest.weight(inst)) << "\n";
      break;
    }
  }
  auto rep = validate_solution(inst, r.cover);
  if (!rep.ok()) throw ContractViolation("infeasible output: " + rep.summary());
  r.cost = cover_cost_exact(inst, r.cover);
  r.stats = stats.str();
  return r;
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<std::string> out;
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  if (rc == 0)
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  globfree(&g);
  if (rc != 0 && rc != GLOB_NOMATCH) throw Error("glob failed: " + pattern);
  std::sort(out.begin(), out.end());
  return out;
}

RatioReport compare_instances(const std::vector<std::string>& paths, const CompareOptions& opts) {
  const int count = static_cast<int>(paths.size());
  std::vector<std::vector<RatioRow>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i; (i = next++) < count;) {
      try {
        const auto inst = load_instance(paths[i]);
        std::optional<Rational> opt;
        if (opts.oracle) opt = inst.to_rational(brute_force_smc(inst, opts.budget).cost);
        std::vector<int> sizes;
        for (const auto& g : inst.groups()) sizes.push_back(static_cast<int>(g.size()));
        for (Algorithm a : opts.algorithms) {
          const auto start = std::chrono::steady_clock::now();
          auto res = run_algorithm(a, inst, opts.tie_break);
          RatioRow row;
          row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                            .count();
          row.instance = std::filesystem::path(paths[i]).filename().string();
          row.n = inst.size();
          row.groups = sizes;
          row.algorithm = to_string(a);
          row.cost = res.cost;
          row.oracle = opt;
          row.bound = res.bound;
          row.iterations = res.iterations;
          slots[i].push_back(row);
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(1, opts.threads); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  RatioReport rep;
  for (auto& s : slots) rep.rows.insert(rep.rows.end(), s.begin(), s.end());
  return rep;
}

namespace {

TieBreak parse_tie_break(const std::string& s) {
  if (s == "lex") return TieBreak::lex;
  if (s == "adversarial") return TieBreak::adversarial;
  throw PreconditionError("unknown tie-break: " + s);
}

OracleBudget budget_for(int budget_n) {
  OracleBudget b;
  if (budget_n > 0) {
    b.max_n_symmetric = budget_n;
    b.max_n_directed = budget_n;
    b.max_n_forest = budget_n;
  }
  return b;
}

// Writes to the file at `path`, or to `fallback` when the path is empty.
template <class F>
void emit(const std::string& path, std::ostream& fallback, F&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot open " + path);
  write(f);
  if (!f) throw Error("write failed: " + path);
}

struct Args {
  std::string kind, groups, algo = "metric3", in, out, tie_break = "lex";
  std::vector<std::string> algos;
  int n = 0, trials = 0, budget_n = 0, threads = 1;
  std::uint64_t seed = 0;
  bool oracle = false, dump = false;
};

int cmd_gen(const Args& a, std::ostream& out) {
  auto inst = generate_instance(parse_instance_kind(a.kind), a.n, parse_group_sizes(a.groups), a.seed);
  emit(a.out, out, [&](std::ostream& o) { write_instance(o, inst); });
  return exit_ok;
}

int cmd_solve(const Args& a, std::ostream& out) {
  const auto inst = load_instance(a.in);
  const auto algo = parse_algorithm(a.algo);
  const auto res = run_algorithm(algo, inst, parse_tie_break(a.tie_break), a.dump ? &out : nullptr);
  if (!a.out.empty()) emit(a.out, out, [&](std::ostream& o) { write_solution(o, res.cover); });
  out << "algo=" << to_string(algo) << " n=" << inst.size() << " cost=" << format_rational(res.cost)
      << " feasible=yes cycles=" << res.cover.cycles.size();
  if (res.iterations) out << " iterations=" << *res.iterations;
  out << ' ' << res.stats;
  int code = exit_ok;
  if (a.oracle) {
    RatioRow row;
    row.cost = res.cost;
    row.oracle = inst.to_rational(brute_force_smc(inst, budget_for(a.budget_n)).cost);
    row.bound = res.bound;
    out << " oracle=" << format_rational(*row.oracle) << " ratio=" << format_rational(*row.ratio())
        << " bound=" << format_rational(row.bound) << ' ' << row.verdict();
    if (row.verdict() != "pass") code = exit_fail;
  }
  out << "\n";
  return code;
}

int cmd_compare(const Args& a, std::ostream& out) {
  CompareOptions o;
  for (const auto& s : a.algos.empty() ? std::vector<std::string>{a.algo} : a.algos)
    o.algorithms.push_back(parse_algorithm(s));
  o.oracle = a.oracle;
  o.budget = budget_for(a.budget_n);
  o.tie_break = parse_tie_break(a.tie_break);
  o.threads = a.threads;
  const auto rep = compare_instances(expand_glob(a.in), o);
  emit(a.out, out, [&](std::ostream& f) { write_ratio_csv(f, rep); });
  if (!a.out.empty()) write_ratio_summary(out, rep);
  for (const auto& r : rep.rows)
    if (r.verdict() == "fail") return exit_fail;
  return exit_ok;
}

int cmd_probe(const Args& a, std::ostream& out, std::ostream& err) {
  ProbeOptions po;
  po.threads = a.threads;
  if (a.budget_n > 0) po.max_n = std::min(po.max_n, a.budget_n);
  if (po.max_n < po.min_n) throw BudgetExceeded("probe needs --budget-n of at least 4");
  const auto rep = matching_vs_opt_probe(a.seed, a.trials, budget_for(a.budget_n), po);
  emit(a.out, out, [&](std::ostream& f) { write_probe_csv(f, rep.rows); });
  err << "trials=" << rep.rows.size() << " counterexamples=" << rep.counterexamples;
  if (!rep.rows.empty()) {
    std::ostringstream mean;
    mean.precision(6);
    mean << std::fixed << rep.mean_ratio_m2;
    err << " min_ratio_m2=" << format_rational(rep.min_ratio_m2) << " max_ratio_m2="
        << format_rational(rep.max_ratio_m2) << " mean_ratio_m2=" << mean.str();
  }
  err << "\n";
  for (const auto& r : rep.rows)
    if (r.counterexample()) err << "counterexample seed=" << r.seed << " n=" << r.n << "\n";
  return rep.counterexamples ? exit_fail : exit_ok;
}

int cmd_oracle(const Args& a, std::ostream& out) {
  const auto inst = load_instance(a.in);
  const auto sol = brute_force_smc(inst, budget_for(a.budget_n));
  if (!a.out.empty()) emit(a.out, out, [&](std::ostream& o) { write_solution(o, sol.cover); });
  out << "opt=" << format_rational(inst.to_rational(sol.cost)) << " n=" << inst.size()
      << " cycles=" << sol.cover.cycles.size() << "\n";
  return exit_ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Steiner multicycle approximations, oracles and probe", "smc"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("kind", a.kind, "euclidean | onetwo | asymmetric")->required();
  gen->add_option("n", a.n, "number of vertices")->required();
  gen->add_option("groups", a.groups, "group sizes, e.g. 3,6")->required();
  gen->add_option("seed,--seed", a.seed, "generator seed");
  gen->add_option("--out", a.out, "output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "Run one algorithm on an instance file");
  solve->add_option("--algo", a.algo, "metric3 | onetwo119 | onetwo76 | asym-log | prior-sf4")->required();
  solve->add_option("--in", a.in, "instance file")->required();
  solve->add_option("--out", a.out, "solution file");
  solve->add_option("--tie-break", a.tie_break, "lex | adversarial");
  solve->add_flag("--dump-stages", a.dump, "print intermediate structures");
  solve->add_flag("--oracle", a.oracle, "compare against the exact optimum");
  solve->add_option("--budget-n", a.budget_n, "largest n handed to the oracle");

  auto* compare = app.add_subcommand("compare", "Ratio table over a set of instance files");
  compare->add_option("--algo", a.algos, "comma separated algorithms")->delimiter(',')->required();
  compare->add_option("--in", a.in, "instance glob")->required();
  compare->add_option("--out", a.out, "CSV file (default stdout)");
  compare->add_flag("--oracle", a.oracle, "add exact optimum and ratio columns");
  compare->add_option("--tie-break", a.tie_break, "lex | adversarial");
  compare->add_option("--budget-n", a.budget_n, "largest n handed to the oracle");
  compare->add_option("--threads", a.threads, "worker threads");

  auto* probe = app.add_subcommand("probe", "Search for w(M'') > opt on small metric instances");
  probe->add_option("--seed", a.seed, "first trial seed");
  probe->add_option("--trials", a.trials, "number of instances")->required();
  probe->add_option("--out", a.out, "CSV file (default stdout)");
  probe->add_option("--budget-n", a.budget_n, "largest n examined (default 9)");
  probe->add_option("--threads", a.threads, "worker threads");

  auto* oracle = app.add_subcommand("oracle", "Exact optimum of an instance file");
  oracle->add_option("--in", a.in, "instance file")->required();
  oracle->add_option("--out", a.out, "solution file");
  oracle->add_option("--budget-n", a.budget_n, "largest n accepted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*gen) return cmd_gen(a, out);
    if (*solve) return cmd_solve(a, out);
    if (*compare) return cmd_compare(a, out);
    if (*probe) return cmd_probe(a, out, err);
    if (*oracle) return cmd_oracle(a, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return exit_budget;
  } catch (const ContractViolation& e) {
    err << "assertion failed: " << e.what() << "\n";
    return exit_fail;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_usage;
  } catch (const InstanceError& e) {
    err << "invalid instance: " << e.what() << "\n";
    return exit_usage;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_fail;
  }
  return exit_usage;
}

}  // namespace smc
