#include "smc/probe.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "smc/generate.hpp"
#include "smc/io.hpp"
#include "smc/metric_approx.hpp"
#include "smc/report.hpp"
#include "smc/steiner_forest.hpp"

namespace smc {

namespace {

Weight matching_on_odd(const Instance& inst, const EdgeSubgraph& forest) {
  Weight w = 0;
  for (auto [a, b] : min_complete_matching(inst, odd_degree_set(forest))) w += inst.w(a, b);
  return w;
}

ProbeRow examine(std::uint64_t seed, const ProbeOptions& opts, const OracleBudget& budget) {
  const int span = opts.max_n - opts.min_n + 1;
  const int n = opts.min_n + static_cast<int>(seed % static_cast<std::uint64_t>(span));
  ProbeRow row;
  row.seed = seed;
  row.n = n;
  row.kind = seed % 2 ? InstanceKind::one_two : InstanceKind::euclidean;
  row.groups = random_group_sizes(n, seed);
  auto inst = generate_instance(row.kind, n, row.groups, seed);

  auto opt = brute_force_smc(inst, budget);
  auto sf = brute_force_steiner_forest(inst, budget);
  auto sf2 = primal_dual_steiner_forest(inst);
  MetricTrace tr;
  approx_metric(inst, JoinMode::t_join, &tr);

  auto q = [&](Weight w) { return inst.to_rational(w); };
  row.opt_smc = q(opt.cost);
  row.opt_sf = q(sf.cost);
  row.w_sf2 = q(sf2.weight(inst));
  row.w_m1 = q(matching_on_odd(inst, sf.edges));
  row.w_m2 = q(matching_on_odd(inst, sf2));
  row.w_m = q(tr.w_matching);
  row.w_j = q(tr.w_tjoin);
  row.w_gprime = q(tr.w_pruned);
  return row;
}

}  // namespace

ProbeReport matching_vs_opt_probe(std::uint64_t seed, int trials, const OracleBudget& budget,
                                  const ProbeOptions& opts) {
  if (trials < 0) throw PreconditionError("negative trial count");
  if (opts.min_n < 2 || opts.min_n > opts.max_n) throw PreconditionError("bad probe size range");
  if (opts.max_n > budget.max_n_symmetric || opts.max_n > budget.max_n_forest)
    throw BudgetExceeded("probe size above the oracle budget");

  ProbeReport rep;
  rep.rows.resize(trials);
  std::vector<std::exception_ptr> errors(trials);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i; (i = next++) < trials;) {
      try {
        rep.rows[i] = examine(seed + static_cast<std::uint64_t>(i), opts, budget);
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

  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    rep.counterexamples += r.counterexample();
    const Rational x = r.ratio_m2();
    if (i == 0 || x < rep.min_ratio_m2) rep.min_ratio_m2 = x;
    if (i == 0 || x > rep.max_ratio_m2) rep.max_ratio_m2 = x;
    rep.mean_ratio_m2 += boost::rational_cast<double>(x);
  }
  if (trials > 0) rep.mean_ratio_m2 /= trials;
  return rep;
}

namespace {

const char* kProbeHeader =
    "seed,n,kind,groups,opt_smc,opt_sf,w_sf2,w_m1,w_m2,ratio_m1,ratio_m2,w_m,w_j,w_gprime,chain,counterexample";

}  // namespace

void write_probe_csv(std::ostream& out, const std::vector<ProbeRow>& rows) {
  out << kProbeHeader << "\n";
  for (const auto& r : rows) {
    out << r.seed << ',' << r.n << ',' << to_string(r.kind) << ',' << join_sizes(r.groups) << ',' << format_rational(r.opt_smc) << ','
        << format_rational(r.opt_sf) << ',' << format_rational(r.w_sf2) << ',' << format_rational(r.w_m1)
        << ',' << format_rational(r.w_m2) << ',' << format_rational(r.ratio_m1()) << ','
        << format_rational(r.ratio_m2()) << ',' << format_rational(r.w_m) << ',' << format_rational(r.w_j)
        << ',' << format_rational(r.w_gprime) << ',' << (r.chain_ok() ? "ok" : "fail") << ','
        << (r.counterexample() ? "yes" : "no") << "\n";
  }
}

std::vector<ProbeRow> read_probe_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kProbeHeader) throw ParseError(1, "bad probe header");
  std::vector<ProbeRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 16) throw ParseError(lineno, "expected 16 probe columns");
    ProbeRow r;
    try {
      r.seed = std::stoull(f[0]);
      r.n = std::stoi(f[1]);
    } catch (const std::logic_error&) {
      throw ParseError(lineno, "bad seed or n");
    }
    r.kind = parse_instance_kind(f[2]);
    r.groups = split_sizes(f[3]);
    r.opt_smc = read_rational(f[4]);
    r.opt_sf = read_rational(f[5]);
    r.w_sf2 = read_rational(f[6]);
    r.w_m1 = read_rational(f[7]);
    r.w_m2 = read_rational(f[8]);
    r.w_m = read_rational(f[11]);
    r.w_j = read_rational(f[12]);
    r.w_gprime = read_rational(f[13]);
    if (format_rational(r.ratio_m1()) != f[9] || format_rational(r.ratio_m2()) != f[10])
      throw ParseError(lineno, "ratio columns disagree with the weights");
    rows.push_back(r);
  }
  return rows;
}

}  // namespace smc
