#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "smc/cycle_cover.hpp"
#include "smc/snd.hpp"

namespace smc {

std::vector<int> odd_degree_set(const EdgeSubgraph& g);

struct TJoin {
  std::vector<int> edge_ids;  // ids into the host subgraph
  Weight weight = 0;
};

// Minimum T-join inside `host`: shortest paths within each component of the
// host, a minimum perfect matching on T per component, and the symmetric
// difference of the matched paths.
TJoin min_t_join(const Instance& inst, const EdgeSubgraph& host, const std::vector<int>& t);

// Minimum perfect matching of T in the complete graph.
std::vector<std::pair<int, int>> min_complete_matching(const Instance& inst, const std::vector<int>& t);

// Eulerian tour of every component (from its smallest vertex, always taking
// the unused edge to the smallest neighbour) shortcut to a cycle. A component
// on two vertices becomes a pair 2-cycle.
CycleCover shortcut_euler(const Instance& inst, const EdgeSubgraph& h);

// Doubles every edge of g and shortcuts the result.
CycleCover double_and_shortcut(const Instance& inst, const EdgeSubgraph& g);

enum class JoinMode { t_join, complete_matching };

struct MetricTrace {
  EdgeSubgraph rounded;   // G from iterative rounding
  EdgeSubgraph pruned;    // G' after bridge deletion
  std::vector<int> odd;   // T
  EdgeSubgraph join;      // J (or M in matching mode), as edges
  EdgeSubgraph euler;     // H = G' + J
  Weight w_rounded = 0, w_pruned = 0, w_tjoin = 0, w_matching = 0, w_euler = 0;
  JainTrace jain;
};

// Metric 3-approximation. Requires a symmetric instance with metric weights.
CycleCover approx_metric(const Instance& inst, JoinMode mode = JoinMode::t_join, MetricTrace* trace = nullptr,
                         std::ostream* lp_log = nullptr);

// Baseline: doubled primal-dual forest, shortcut.
CycleCover approx_prior_sf4(const Instance& inst, EdgeSubgraph* forest = nullptr);

}  // namespace smc
