#pragma once

#include <string>
#include <utility>
#include <vector>

#include "smc/instance.hpp"

namespace smc {

// A cycle given by its vertex sequence. For undirected covers a two-vertex
// cycle is only legal when it is a size-two group joined by a doubled edge,
// which is recorded by `pair`.
struct Cycle {
  std::vector<int> vertices;
  bool pair = false;

  int size() const noexcept { return static_cast<int>(vertices.size()); }
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

struct CycleCover {
  std::vector<Cycle> cycles;
  bool directed = false;

  friend bool operator==(const CycleCover&, const CycleCover&) = default;
};

enum class ViolationKind {
  bad_vertex,
  uncovered_vertex,
  repeated_vertex,
  short_cycle,
  illegal_two_cycle,
  split_group,
};

const char* to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct FeasibilityReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  std::string summary() const;
};

// Structural check only: vertex-disjoint spanning cycles of legal length.
FeasibilityReport check_two_factor(const Instance& inst, const CycleCover& cover);

// Structural check plus every group lying inside a single cycle.
FeasibilityReport validate_solution(const Instance& inst, const CycleCover& cover);

bool respects_groups(const Instance& inst, const CycleCover& cover);

// Scaled cost. Throws PreconditionError if the cover is not a valid 2-factor.
Weight cover_cost(const Instance& inst, const CycleCover& cover);
Rational cover_cost_exact(const Instance& inst, const CycleCover& cover);

Weight cycle_cost(const Instance& inst, const Cycle& c);

// Arcs (u, next) of a cycle in traversal order. A pair cycle yields both copies.
std::vector<std::pair<int, int>> cycle_edges(const Cycle& c);

// Number of edges of weight two (scaled 2 * scale), with multiplicity.
int count_heavy_edges(const Instance& inst, const CycleCover& cover);

// Per cycle: true when some group meets it without lying inside it.
std::vector<bool> disrespecting_cycles(const Instance& inst, const CycleCover& cover);

// Index of the cycle containing each vertex (-1 if none).
std::vector<int> cycle_index(int n, const CycleCover& cover);

// Canonical form: each cycle rotated to start at its smallest vertex (and for
// undirected cycles oriented towards the smaller neighbour), cycles sorted.
CycleCover canonical(const CycleCover& cover);

}  // namespace smc
