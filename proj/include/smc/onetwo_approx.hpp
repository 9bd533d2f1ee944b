#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "smc/cycle_cover.hpp"
#include "smc/matching.hpp"

namespace smc {

enum class OneTwoVariant { ratio_11_9, ratio_7_6 };

const char* to_string(OneTwoVariant v);

// Minimum 2-factor with at most one nonpure cycle, and no weight-one edge from
// an endpoint of a weight-two edge of that cycle into a pure cycle.
struct SpecialTwoFactor {
  CycleCover cover;
  std::vector<bool> pure;  // per cycle
  int nonpure = -1;        // index of the nonpure cycle, -1 if none
};

// Applies the two repair steps to a minimum 2-factor.
SpecialTwoFactor make_special(const Instance& inst, CycleCover base);
// Minimum 2-factor (triangle-free for the 7/6 variant) followed by the repairs.
SpecialTwoFactor special_2factor(const Instance& inst, OneTwoVariant variant = OneTwoVariant::ratio_11_9);
// Direct scan of both properties; returns a description of the first failure.
std::optional<std::string> special_violation(const Instance& inst, const SpecialTwoFactor& f);

// Bipartite graph: node v < n is vertex v, node n + j is right_cycle[j].
struct AttachmentGraph {
  WeightedGraph graph;
  int left = 0;
  std::vector<int> right_cycle;
};

AttachmentGraph build_B(const Instance& inst, const SpecialTwoFactor& f);

// Arc of D: cycle `from` is matched to vertex `vertex` of cycle `to`.
struct AttachmentArc {
  int from = -1;
  int to = -1;
  int vertex = -1;
};

enum class ComponentShape { isolated, in_tree, path };

const char* to_string(ComponentShape s);

// in_tree: nodes[0] is the root, the rest are leaves. path: nodes = i, j, k
// with arcs i -> j -> k.
struct DComponent {
  ComponentShape shape = ComponentShape::isolated;
  std::vector<int> nodes;
};

struct AttachmentDigraph {
  std::vector<std::optional<AttachmentArc>> out;  // D, per cycle
  std::vector<DComponent> components;             // D'
  std::vector<int> broken;                        // tails of arcs removed to break cycles
};

AttachmentDigraph build_D_and_Dprime(const Instance& inst, const SpecialTwoFactor& f,
                                     const AttachmentGraph& b, const Matching& m);
std::optional<std::string> dprime_violation(const SpecialTwoFactor& f, const AttachmentDigraph& d);

// All maximum matchings of B (edge ids sorted). BudgetExceeded above `limit`.
std::vector<Matching> all_maximum_matchings(const AttachmentGraph& b, std::size_t limit = 200000);

// Cycles under construction. Edges listed in `red` count as weight two in
// the audits even when their real weight is one.
struct WorkingCover {
  std::vector<std::vector<int>> cycles;
  std::vector<bool> pair;
  std::set<std::pair<int, int>> red;
};

CycleCover to_cover(const WorkingCover& w);

struct PhaseLog {
  Weight virtual_delta = 0;
  Weight real_delta = 0;
  std::vector<Weight> ops;  // virtual delta of each merge
};

WorkingCover join_component_cycles(const Instance& inst, const SpecialTwoFactor& f,
                                   const AttachmentDigraph& d, TieBreak tb, PhaseLog* log = nullptr);
WorkingCover join_disrespecting_cycles(const Instance& inst, WorkingCover cover, TieBreak tb,
                                       PhaseLog* log = nullptr);

struct OneTwoTrace {
  SpecialTwoFactor special;
  AttachmentGraph b;
  Matching m;
  AttachmentDigraph d;
  CycleCover phase1;
  CycleCover result;
  Weight w_f = 0;
  int e2_f = 0;
  int c_p = 0;
  int c_p_vertices = 0;
  int pool = 0;         // n minus e2(F) minus the vertices of the c_p cycles
  int strict_pool = 0;  // vertices off the weight-two edges of F and outside the c_p cycles
  PhaseLog phase1_log;
  PhaseLog phase2_log;
  bool phase1_audit = true;   // phase-1 virtual increase within 2/9 (1/6) of pool
  bool phase1_strict = true;  // same against strict_pool; can fail on a nonpure root
  bool chain_bound = true;   // cost within the per-run upper bound in n, e2(F), c_p
  long candidates = 1;       // runs compared in adversarial mode
};

// Group-respecting cover for a one-two instance. The adversarial tie-break
// explores every minimum 2-factor (n <= 9) and every maximum matching of B and
// keeps the most expensive outcome.
CycleCover approx_onetwo(const Instance& inst, OneTwoVariant variant, TieBreak tb = TieBreak::lex,
                         OneTwoTrace* trace = nullptr);

void write_stages(std::ostream& out, const Instance& inst, const OneTwoTrace& t);

}  // namespace smc
