#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "smc/generate.hpp"
#include "smc/oracle.hpp"

namespace smc {

// One examined instance. Weights are exact; M' matches the odd vertices of an
// optimal Steiner forest, M'' those of the primal-dual forest, both in the
// complete graph.
struct ProbeRow {
  std::uint64_t seed = 0;
  int n = 0;
  InstanceKind kind = InstanceKind::euclidean;
  std::vector<int> groups;
  Rational opt_smc;
  Rational opt_sf;
  Rational w_sf2;
  Rational w_m1;
  Rational w_m2;
  // metric pipeline on the same instance
  Rational w_m;
  Rational w_j;
  Rational w_gprime;

  Rational ratio_m1() const { return w_m1 / opt_smc; }
  Rational ratio_m2() const { return w_m2 / opt_smc; }
  bool counterexample() const { return w_m1 > opt_smc || w_m2 > opt_smc; }
  bool chain_ok() const { return w_m <= w_j && Rational(2) * w_j <= w_gprime; }
  friend bool operator==(const ProbeRow&, const ProbeRow&) = default;
};

struct ProbeReport {
  std::vector<ProbeRow> rows;
  int counterexamples = 0;
  Rational min_ratio_m2, max_ratio_m2;
  double mean_ratio_m2 = 0;
};

struct ProbeOptions {
  int min_n = 4;
  int max_n = 9;
  int threads = 1;
};

// Trial i examines an instance generated from seed + i: euclidean for even
// seeds, one-two for odd ones.
ProbeReport matching_vs_opt_probe(std::uint64_t seed, int trials, const OracleBudget& budget = {},
                                  const ProbeOptions& opts = {});

void write_probe_csv(std::ostream& out, const std::vector<ProbeRow>& rows);
std::vector<ProbeRow> read_probe_csv(std::istream& in);

}  // namespace smc
