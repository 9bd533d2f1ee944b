#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "smc/cycle_cover.hpp"

namespace smc {

struct TwoFactorRequest {
  bool directed = false;
  bool triangle_free = false;       // only for one-two instances
  bool allow_pair_2cycles = true;   // doubled-edge 2-cycles on size-two groups
};

// Dispatches on the request. Throws PreconditionError when no 2-factor exists
// or the request is inconsistent with the instance.
CycleCover solve_two_factor(const Instance& inst, const TwoFactorRequest& req);

// Minimum-weight undirected 2-factor on the given vertex subset (all vertices
// if empty) through the vertex/edge gadget and perfect matching.
CycleCover min_weight_2factor(const Instance& inst, bool allow_pair_2cycles = true,
                              const std::vector<int>& subset = {});

// Minimum-weight directed 2-factor (cycle cover, 2-cycles allowed) on the
// induced sub-digraph of `subset` (all vertices if empty).
CycleCover min_weight_directed_2factor(const Instance& inst, const std::vector<int>& subset = {});

// Swappable source of maximum triangle-free simple 2-matchings. Vertices are
// 0..n-1, edges are given as pairs. With `no_small_path_part`, matchings whose
// path components cover 1, 2 or 3 vertices in total are not allowed.
class TriangleFreeMatcher {
 public:
  virtual ~TriangleFreeMatcher() = default;
  virtual std::vector<std::pair<int, int>> max_triangle_free_2matching(
      int n, const std::vector<std::pair<int, int>>& edges, bool no_small_path_part) const = 0;
};

// Exact branch and bound, limited to n <= max_n (BudgetExceeded beyond).
class BruteForceTriangleFreeMatcher : public TriangleFreeMatcher {
 public:
  explicit BruteForceTriangleFreeMatcher(int max_n = 12) : max_n_(max_n) {}
  std::vector<std::pair<int, int>> max_triangle_free_2matching(
      int n, const std::vector<std::pair<int, int>>& edges, bool no_small_path_part) const override;

 private:
  int max_n_;
};

const TriangleFreeMatcher& default_triangle_free_matcher();

// Minimum-weight triangle-free 2-factor of a one-two instance restricted to
// `subset`, built from a maximum triangle-free 2-matching of the weight-one
// edges. Pair 2-cycles are not used.
CycleCover triangle_free_from_simple_2matching(const Instance& inst, const std::vector<int>& subset,
                                               const TriangleFreeMatcher& matcher);

// Minimum-weight triangle-free 2-factor; pair 2-cycles allowed if requested.
CycleCover min_weight_triangle_free_2factor(
    const Instance& inst, bool allow_pair_2cycles = true,
    const TriangleFreeMatcher& matcher = default_triangle_free_matcher());

bool has_triangle(const CycleCover& cover);

// Turns a degree-two multigraph (each listed edge once per copy) into cycles.
CycleCover cycles_from_degree_two(int n, const std::vector<std::pair<int, int>>& edges,
                                  const std::vector<int>& vertices);

}  // namespace smc
