#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smc/cycle_cover.hpp"

namespace smc {

// Number of cycles that do not respect the groups.
int eta(const Instance& inst, const CycleCover& cover);

struct RepresentativeSet {
  struct Source {
    int cycle_a = -1;
    int cycle_b = -1;
    int group = -1;
    int r_a = -1;
    int r_b = -1;
  };
  std::vector<int> vertices;  // sorted
  std::vector<Source> sources;
  std::vector<int> lonely;    // cycles with exactly one representative
};

// Minimal edge cover of the graph on disrespecting cycles (adjacent when they
// meet a common group); one terminal of the shared group per cover endpoint.
// Precondition: eta > 0.
RepresentativeSet representatives(const Instance& inst, const CycleCover& cover);
std::optional<std::string> representative_violation(const Instance& inst, const CycleCover& cover,
                                                     const RepresentativeSet& r);

using ArcList = std::vector<std::pair<int, int>>;  // multiset of arcs

// Balanced degrees k(v), and removing v adds exactly k(v) - 1 weak components.
// Only vertices touched by an arc are considered.
bool is_strongly_eulerian(int n, const ArcList& arcs, std::string* why = nullptr);

// Splices (u1, v), (v, w2) into (u1, w2) until every vertex has k(v) = 1.
// Throws PreconditionError unless the input is strongly Eulerian.
CycleCover directed_shortcut(const Instance& inst, ArcList arcs);

// One Euler circuit per weak component, shortcut to a cycle.
CycleCover euler_shortcut(const Instance& inst, const ArcList& arcs);

struct AsymIteration {
  int eta_before = 0;
  int eta_after = 0;
  RepresentativeSet r;
  CycleCover inner;  // minimum directed 2-factor on R
  Weight inner_weight = 0;
  Weight weight_after = 0;
  int components = 0;          // weak components of the union
  int fallback_components = 0; // components not strongly Eulerian
};

struct AsymTrace {
  CycleCover initial;
  Weight initial_weight = 0;
  std::vector<AsymIteration> iterations;
  int fallbacks = 0;
  // Minimum 2-factors computed, the initial one included.
  int factor_count() const { return 1 + static_cast<int>(iterations.size()); }
};

// ceil(log_{4/3} n) + 1, computed exactly.
int asymmetric_iteration_limit(int n);

// Directed cover respecting the groups. Components of the union that are not
// strongly Eulerian are shortcut along an Euler circuit instead of spliced.
CycleCover approx_asymmetric(const Instance& inst, AsymTrace* trace = nullptr);

}  // namespace smc
