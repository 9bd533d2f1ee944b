#include "smc/metric_approx.hpp"

#include <algorithm>
#include <limits>

#include "smc/matching.hpp"
#include "smc/steiner_forest.hpp"

namespace smc {

std::vector<int> odd_degree_set(const EdgeSubgraph& g) {
  std::vector<int> deg(g.n, 0);
  for (auto [u, v] : g.edges) ++deg[u], ++deg[v];
  std::vector<int> t;
  for (int v = 0; v < g.n; ++v)
    if (deg[v] % 2) t.push_back(v);
  return t;
}

namespace {

// Perfect matching of `pts` under the distance function; pairs of vertices.
template <typename Dist>
std::vector<std::pair<int, int>> match_points(const std::vector<int>& pts, Dist dist) {
  const int k = static_cast<int>(pts.size());
  if (k % 2) throw ContractViolation("odd number of vertices to match");
  WeightedGraph g(k);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) g.add_edge(a, b, dist(pts[a], pts[b]));
  auto m = min_weight_perfect_matching(g);
  require(m.has_value(), "no perfect matching on a complete graph");
  std::vector<std::pair<int, int>> out;
  for (int id : m->edge_ids) out.emplace_back(pts[g.edge(id).u], pts[g.edge(id).v]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::pair<int, int>> min_complete_matching(const Instance& inst, const std::vector<int>& t) {
  return match_points(t, [&](int a, int b) { return inst.w(a, b); });
}

TJoin min_t_join(const Instance& inst, const EdgeSubgraph& host, const std::vector<int>& t) {
  const int n = host.n;
  constexpr Weight inf = std::numeric_limits<Weight>::max() / 4;
  std::vector<Weight> dist(static_cast<size_t>(n) * n, inf);
  std::vector<int> via(static_cast<size_t>(n) * n, -1);  // first edge id on the path
  std::vector<int> next(static_cast<size_t>(n) * n, -1);
  auto at = [n](int a, int b) { return static_cast<size_t>(a) * n + b; };
  for (int v = 0; v < n; ++v) dist[at(v, v)] = 0;
  for (int id = 0; id < host.edge_count(); ++id) {
    auto [u, v] = host.edges[id];
    Weight w = inst.w(u, v);
    if (w < dist[at(u, v)]) {
      dist[at(u, v)] = dist[at(v, u)] = w;
      via[at(u, v)] = via[at(v, u)] = id;
      next[at(u, v)] = v;
      next[at(v, u)] = u;
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (dist[at(i, k)] >= inf) continue;
      for (int j = 0; j < n; ++j) {
        Weight c = dist[at(i, k)] + dist[at(k, j)];
        if (c < dist[at(i, j)]) {
          dist[at(i, j)] = c;
          next[at(i, j)] = next[at(i, k)];
          via[at(i, j)] = via[at(i, k)];
        }
      }
    }

  auto comp = components(host);
  std::vector<int> toggles(host.edge_count(), 0);
  std::vector<int> roots;
  for (int v : t)
    if (std::find(roots.begin(), roots.end(), comp[v]) == roots.end()) roots.push_back(comp[v]);
  for (int r : roots) {
    std::vector<int> part;
    for (int v : t)
      if (comp[v] == r) part.push_back(v);
    auto pairs = match_points(part, [&](int a, int b) { return dist[at(a, b)]; });
    for (auto [a, b] : pairs) {
      for (int cur = a; cur != b; cur = next[at(cur, b)]) ++toggles[via[at(cur, b)]];
    }
  }
  TJoin j;
  for (int id = 0; id < host.edge_count(); ++id)
    if (toggles[id] % 2) {
      j.edge_ids.push_back(id);
      j.weight += inst.w(host.edges[id].first, host.edges[id].second);
    }
  return j;
}

CycleCover shortcut_euler(const Instance& inst, const EdgeSubgraph& h) {
  const int n = h.n;
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbour, edge id)
  for (int id = 0; id < h.edge_count(); ++id) {
    auto [u, v] = h.edges[id];
    adj[u].push_back({v, id});
    adj[v].push_back({u, id});
  }
  for (auto& a : adj) {
    if (a.size() % 2) throw PreconditionError("shortcut needs an even-degree multigraph");
    std::sort(a.begin(), a.end());
  }
  auto comp = components(h);
  CycleCover cover;
  std::vector<char> used(h.edge_count(), 0), done(n, 0);
  std::vector<size_t> ptr(n, 0);
  for (int s = 0; s < n; ++s) {
    if (done[s]) continue;
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if (comp[v] == comp[s]) members.push_back(v);
    for (int v : members) done[v] = 1;
    if (members.size() == 1) throw PreconditionError("isolated vertex in the Eulerian multigraph");
    if (members.size() == 2) {
      if (!inst.is_pair(members[0], members[1]))
        throw ContractViolation("two-vertex component that is not a size-two group");
      cover.cycles.push_back(Cycle{{members[0], members[1]}, true});
      continue;
    }
    std::vector<int> stack{s}, circuit;
    while (!stack.empty()) {
      int v = stack.back();
      while (ptr[v] < adj[v].size() && used[adj[v][ptr[v]].second]) ++ptr[v];
      if (ptr[v] == adj[v].size()) {
        circuit.push_back(v);
        stack.pop_back();
      } else {
        auto [to, id] = adj[v][ptr[v]];
        used[id] = 1;
        stack.push_back(to);
      }
    }
    std::reverse(circuit.begin(), circuit.end());
    Cycle c;
    std::vector<char> seen(n, 0);
    for (int v : circuit)
      if (!seen[v]) {
        seen[v] = 1;
        c.vertices.push_back(v);
      }
    require(c.size() == static_cast<int>(members.size()), "Euler tour missed part of its component");
    cover.cycles.push_back(std::move(c));
  }
  require(cover_cost(inst, cover) <= h.weight(inst), "shortcutting increased the weight");
  return cover;
}

CycleCover double_and_shortcut(const Instance& inst, const EdgeSubgraph& g) {
  EdgeSubgraph h = g;
  for (auto e : g.edges) h.edges.push_back(e);
  return shortcut_euler(inst, h);
}

CycleCover approx_metric(const Instance& inst, JoinMode mode, MetricTrace* trace, std::ostream* lp_log) {
  if (!inst.symmetric()) throw PreconditionError("metric algorithm needs a symmetric instance");
  if (inst.weight_class() == WeightClass::asymmetric_metric)
    throw PreconditionError("metric algorithm needs symmetric metric weights");
  auto req = build_requirements(inst);
  MetricTrace tr;
  tr.rounded = jain_round(inst, req, &tr.jain, lp_log);
  tr.pruned = prune_bridges(tr.rounded, req);
  tr.odd = odd_degree_set(tr.pruned);
  auto tj = min_t_join(inst, tr.pruned, tr.odd);
  auto mpairs = min_complete_matching(inst, tr.odd);
  tr.w_rounded = tr.rounded.weight(inst);
  tr.w_pruned = tr.pruned.weight(inst);
  tr.w_tjoin = tj.weight;
  for (auto [a, b] : mpairs) tr.w_matching += inst.w(a, b);
  require(2 * tr.w_tjoin <= tr.w_pruned, "T-join heavier than half of the pruned graph");
  require(tr.w_matching <= tr.w_tjoin, "complete matching heavier than the T-join");

  tr.join.n = inst.size();
  if (mode == JoinMode::t_join) {
    for (int id : tj.edge_ids) tr.join.edges.push_back(tr.pruned.edges[id]);
  } else {
    for (auto [a, b] : mpairs) tr.join.add(a, b);
  }
  tr.euler = tr.pruned;
  for (auto e : tr.join.edges) tr.euler.edges.push_back(e);
  tr.w_euler = tr.euler.weight(inst);
  auto cover = shortcut_euler(inst, tr.euler);
  auto rep = validate_solution(inst, cover);
  require(rep.ok(), "metric algorithm produced an infeasible cover");
  // The LP value bounds the optimum from below, so this is the ratio-3 guarantee.
  if (!tr.jain.iterations.empty())
    require(mpq_class(cover_cost(inst, cover)) <= 3 * tr.jain.first_lp_value, "metric bound of three violated");
  if (trace) *trace = std::move(tr);
  return cover;
}

CycleCover approx_prior_sf4(const Instance& inst, EdgeSubgraph* forest) {
  auto f = primal_dual_steiner_forest(inst);
  auto cover = double_and_shortcut(inst, f);
  require(validate_solution(inst, cover).ok(), "forest baseline produced an infeasible cover");
  if (forest) *forest = std::move(f);
  return cover;
}

}  // namespace smc
