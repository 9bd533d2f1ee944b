#pragma once

#include <optional>
#include <vector>

#include "smc/types.hpp"

namespace smc {

struct Edge {
  int u;
  int v;
  Weight w;
};

// Simple undirected weighted graph; vertices 0..n-1, no loops.
class WeightedGraph {
 public:
  explicit WeightedGraph(int n = 0) : n_(n) {}

  int add_edge(int u, int v, Weight w);
  int vertex_count() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const Edge& edge(int id) const { return edges_[id]; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

 private:
  int n_;
  std::vector<Edge> edges_;
};

// A matching as a list of edge ids of the host graph.
struct Matching {
  std::vector<int> edge_ids;

  int size() const noexcept { return static_cast<int>(edge_ids.size()); }
};

Weight matching_weight(const WeightedGraph& g, const Matching& m);
// mate[v] = partner or -1.
std::vector<int> mates(const WeightedGraph& g, const Matching& m);

// Minimum-weight perfect matching (weighted blossom, exact integers).
// Returns nullopt when no perfect matching exists.
std::optional<Matching> min_weight_perfect_matching(const WeightedGraph& g);

// Maximum-weight matching; with max_cardinality the maximum is taken over
// maximum-cardinality matchings. Weights may be any integers.
Matching max_weight_matching(const WeightedGraph& g, bool max_cardinality);

// Maximum-cardinality matching (unweighted blossom).
Matching max_cardinality_matching(const WeightedGraph& g);

// Square assignment: cost[i][j] for row i and column j, nullopt marks a
// forbidden pair. Returns the column of each row, or nullopt if no perfect
// assignment avoids the forbidden pairs.
using CostMatrix = std::vector<std::vector<std::optional<Weight>>>;
std::optional<std::vector<int>> min_cost_assignment(const CostMatrix& cost);

// Inclusion-minimal edge cover of minimum cardinality. Precondition: no
// isolated vertex.
std::vector<int> minimal_edge_cover(const WeightedGraph& g);

}  // namespace smc
