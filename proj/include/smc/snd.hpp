#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <gmpxx.h>

#include "smc/instance.hpp"

namespace smc {

// Connectivity requirement r(i, j) = 2 for i, j in the same group, 0 otherwise.
// A vertex set W has requirement 2 exactly when it splits some group.
struct SndRequirements {
  int n = 0;
  std::vector<int> group_of;
  std::vector<std::vector<int>> groups;

  int requirement(int i, int j) const { return i != j && group_of[i] == group_of[j] ? 2 : 0; }
  // W given as a 0/1 membership vector.
  bool splits_group(const std::vector<char>& in_w) const;
};

SndRequirements build_requirements(const Instance& inst);

// Edge multiset; each entry is one copy of an edge, stored with u < v.
// The entry index is the edge identity used by joins and tours.
struct EdgeSubgraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  void add(int u, int v);
  Weight weight(const Instance& inst) const;
  int multiplicity(int u, int v) const;
  int degree(int v) const;
  int edge_count() const { return static_cast<int>(edges.size()); }
};

// Every set that splits a group is crossed by at least two edge copies.
bool satisfies_requirements(const SndRequirements& req, const EdgeSubgraph& g);

// Edge ids of bridges; parallel copies are never bridges.
std::vector<int> find_bridges(const EdgeSubgraph& g);

// Connected component label of every vertex.
std::vector<int> components(const EdgeSubgraph& g);

// An LP variable: copy `copy` of edge {u, v}. Non-pair edges have one copy,
// edges inside size-two groups have two.
struct CandidateEdge {
  int u;
  int v;
  int copy;
};

struct FractionalEdgeVector {
  std::vector<CandidateEdge> edges;
  std::vector<mpq_class> x;
  mpq_class objective;  // in scaled weight units
};

struct LpStats {
  int rounds = 0;   // separation rounds
  int cuts = 0;     // constraints in the final LP
  int pivots = 0;
};

// Optimal extreme point of the residual cut LP:
//   min w.x  s.t.  x(delta(W)) >= 2 - |fixed cap delta(W)| for every W that
//   splits a group, 0 <= x <= 1, over the copies not already in `fixed`.
// Exact rational arithmetic; separation is exhaustive for n <= 16 and by
// max-flow otherwise.
FractionalEdgeVector solve_cut_lp(const Instance& inst, const SndRequirements& req,
                                  const EdgeSubgraph& fixed, LpStats* stats = nullptr,
                                  std::ostream* log = nullptr);

struct JainIteration {
  mpq_class lp_value;
  int fixed_added = 0;
  LpStats stats;
};

struct JainTrace {
  std::vector<JainIteration> iterations;
  mpq_class first_lp_value;  // LP lower bound on the SND optimum
};

// Iterative rounding: repeatedly solve the residual LP and fix every copy
// with x >= 1/2. Result weight is at most twice the first LP value.
EdgeSubgraph jain_round(const Instance& inst, const SndRequirements& req, JainTrace* trace = nullptr,
                        std::ostream* log = nullptr);

// Repeatedly deletes bridges. Feasibility is preserved.
EdgeSubgraph prune_bridges(const EdgeSubgraph& g, const SndRequirements& req);

}  // namespace smc
