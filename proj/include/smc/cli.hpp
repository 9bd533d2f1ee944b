#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "smc/cycle_cover.hpp"
#include "smc/oracle.hpp"
#include "smc/report.hpp"

namespace smc {

enum ExitCode { exit_ok = 0, exit_fail = 1, exit_usage = 2, exit_budget = 3 };

enum class Algorithm { metric3, onetwo119, onetwo76, asym_log, prior_sf4 };

Algorithm parse_algorithm(const std::string& s);
const char* to_string(Algorithm a);

struct SolveResult {
  CycleCover cover;
  Rational cost;
  Rational bound;                  // guaranteed ratio; for asym-log the factor count of this run
  std::optional<int> iterations;   // asym-log: minimum 2-factors computed
  std::string stats;               // "key=value" pairs for the summary line
};

// Runs one algorithm and re-validates its output. Stage details go to
// `stages` when given.
SolveResult run_algorithm(Algorithm a, const Instance& inst, TieBreak tb, std::ostream* stages = nullptr);

struct CompareOptions {
  std::vector<Algorithm> algorithms;
  bool oracle = false;
  OracleBudget budget;
  TieBreak tie_break = TieBreak::lex;
  int threads = 1;
};

// Rows ordered by path, then by algorithm as listed.
RatioReport compare_instances(const std::vector<std::string>& paths, const CompareOptions& opts);

// Sorted matches of a shell pattern.
std::vector<std::string> expand_glob(const std::string& pattern);

// Entry point of the smc tool; returns an ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace smc
