#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <vector>

#include "smc/cycle_cover.hpp"
#include "smc/snd.hpp"

namespace smc {

// Size limits for the exhaustive routines. Exceeding one raises BudgetExceeded.
struct OracleBudget {
  int max_n_symmetric = 12;
  int max_n_directed = 8;
  int max_n_permutation = 8;
  int max_n_2factor = 9;
  int max_n_2factor_directed = 7;
  int max_n_snd = 7;
  int max_n_forest = 14;
  std::chrono::milliseconds time_limit{60000};
};

struct OracleSolution {
  Weight cost = 0;
  CycleCover cover;
};

// Optimum by dynamic programming: Hamiltonian cycle cost of every vertex set
// (Held-Karp) combined over partitions of the groups.
OracleSolution brute_force_smc(const Instance& inst, const OracleBudget& budget = {});

// Independent optimum by enumerating successor permutations.
Weight enumerate_smc(const Instance& inst, const OracleBudget& budget = {});

struct TwoFactorQuery {
  bool directed = false;
  bool triangle_free = false;
  bool allow_pair_2cycles = true;
};

// Exhaustive minimum 2-factor (no group constraint).
OracleSolution brute_force_2factor(const Instance& inst, const TwoFactorQuery& q,
                                   const OracleBudget& budget = {});

// All minimum-weight undirected 2-factors, each listed once (canonical form).
// `max_n` replaces the budget limit for this enumeration.
std::vector<CycleCover> all_min_2factors(const Instance& inst, const TwoFactorQuery& q, int max_n);

// Minimum-weight multigraph meeting the connectivity requirements (copies
// limited to one per edge, two inside size-two groups).
struct SndSolution {
  Weight cost = 0;
  EdgeSubgraph edges;
};
SndSolution brute_force_snd(const Instance& inst, const OracleBudget& budget = {});

// Minimum-weight forest connecting every group.
SndSolution brute_force_steiner_forest(const Instance& inst, const OracleBudget& budget = {});

}  // namespace smc
