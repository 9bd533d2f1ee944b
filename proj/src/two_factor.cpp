#include "smc/two_factor.hpp"

#include <algorithm>
#include <numeric>

#include "smc/matching.hpp"

namespace smc {

namespace {

std::vector<int> all_vertices(const Instance& inst, const std::vector<int>& subset) {
  if (!subset.empty()) {
    auto s = subset;
    std::sort(s.begin(), s.end());
    return s;
  }
  std::vector<int> v(inst.size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

CycleCover cycles_from_degree_two(int n, const std::vector<std::pair<int, int>>& edges,
                                  const std::vector<int>& vertices) {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  CycleCover cover;
  std::vector<char> seen(n, 0);
  for (int s : vertices) {
    if (seen[s]) continue;
    require(adj[s].size() == 2, "2-factor: vertex without degree two");
    Cycle c;
    if (adj[s][0] == adj[s][1]) {
      c.vertices = {s, adj[s][0]};
      c.pair = true;
      seen[s] = seen[adj[s][0]] = 1;
      cover.cycles.push_back(std::move(c));
      continue;
    }
    int prev = -1, cur = s;
    while (!seen[cur]) {
      seen[cur] = 1;
      c.vertices.push_back(cur);
      require(adj[cur].size() == 2, "2-factor: vertex without degree two");
      int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      if (prev == -1) nxt = std::min(adj[cur][0], adj[cur][1]);
      prev = cur;
      cur = nxt;
    }
    require(cur == s, "2-factor: walk did not close");
    cover.cycles.push_back(std::move(c));
  }
  return cover;
}

CycleCover min_weight_2factor(const Instance& inst, bool allow_pair_2cycles,
                              const std::vector<int>& subset) {
  if (!inst.symmetric()) throw PreconditionError("undirected 2-factor needs a symmetric instance");
  auto vs = all_vertices(inst, subset);
  const int k = static_cast<int>(vs.size());
  if (k == 0) return {};

  struct E {
    int u, v;
  };
  std::vector<E> es;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      es.push_back({vs[a], vs[b]});
      if (allow_pair_2cycles && inst.is_pair(vs[a], vs[b])) es.push_back({vs[a], vs[b]});
    }

  // Each vertex has two copies; each edge e = uv has nodes e_u, e_v joined by
  // a free edge. Matching e_u to a copy of u and e_v to a copy of v selects e.
  std::vector<int> local(inst.size(), -1);
  for (int a = 0; a < k; ++a) local[vs[a]] = a;
  const int base = 2 * k;
  WeightedGraph g(base + 2 * static_cast<int>(es.size()));
  std::vector<int> select_edge;  // gadget edge id -> selected graph edge
  for (size_t e = 0; e < es.size(); ++e) {
    int eu = base + 2 * static_cast<int>(e), ev = eu + 1;
    g.add_edge(eu, ev, 0);
    for (int c = 0; c < 2; ++c) {
      g.add_edge(2 * local[es[e].u] + c, eu, inst.w(es[e].u, es[e].v));
      g.add_edge(2 * local[es[e].v] + c, ev, 0);
    }
  }
  auto m = min_weight_perfect_matching(g);
  if (!m) throw PreconditionError("no 2-factor exists on this vertex set");

  std::vector<std::pair<int, int>> chosen;
  for (int id : m->edge_ids) {
    const Edge& ge = g.edge(id);
    int lo = std::min(ge.u, ge.v), hi = std::max(ge.u, ge.v);
    if (lo < base && hi >= base && (hi - base) % 2 == 0) {
      const E& e = es[(hi - base) / 2];
      chosen.emplace_back(e.u, e.v);
    }
  }
  return cycles_from_degree_two(inst.size(), chosen, vs);
}

CycleCover min_weight_directed_2factor(const Instance& inst, const std::vector<int>& subset) {
  auto vs = all_vertices(inst, subset);
  const int k = static_cast<int>(vs.size());
  if (k == 0) return CycleCover{{}, true};
  if (k == 1) throw PreconditionError("no directed 2-factor on a single vertex");
  CostMatrix c(k, std::vector<std::optional<Weight>>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) c[i][j] = inst.w(vs[i], vs[j]);
  auto a = min_cost_assignment(c);
  require(a.has_value(), "directed 2-factor: assignment failed");
  CycleCover cover;
  cover.directed = true;
  std::vector<char> seen(k, 0);
  for (int s = 0; s < k; ++s) {
    if (seen[s]) continue;
    Cycle cyc;
    for (int cur = s; !seen[cur]; cur = (*a)[cur]) {
      seen[cur] = 1;
      cyc.vertices.push_back(vs[cur]);
    }
    cover.cycles.push_back(std::move(cyc));
  }
  return cover;
}

bool has_triangle(const CycleCover& cover) {
  for (const auto& c : cover.cycles)
    if (c.size() == 3) return true;
  return false;
}

namespace {

class TfSearch {
 public:
  TfSearch(int n, const std::vector<std::pair<int, int>>& edges, bool no_small)
      : n_(n), edges_(edges), no_small_(no_small), deg_(n, 0), adj_(n, 0) {
    // Remaining-incidence counts for the degree bound.
    rem_.assign(n, 0);
    for (auto [u, v] : edges_) ++rem_[u], ++rem_[v];
    chosen_.assign(edges_.size(), 0);
  }

  std::vector<std::pair<int, int>> run() {
    dfs(0, 0);
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < edges_.size(); ++i)
      if (best_set_.size() && best_set_[i]) out.push_back(edges_[i]);
    return out;
  }

 private:
  int bound() const {
    int s = 0;
    for (int v = 0; v < n_; ++v) s += std::min(2 - deg_[v], rem_[v]);
    return s / 2;
  }

  bool admissible() const {
    if (!no_small_) return true;
    // Vertices outside cycles lie on paths; their total must not be 1..3.
    std::vector<int> comp(n_, -1);
    int path_vertices = 0;
    for (int s = 0; s < n_; ++s) {
      if (comp[s] != -1) continue;
      std::vector<int> stack{s}, members;
      comp[s] = s;
      bool cycle = true;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        members.push_back(v);
        if (deg_[v] != 2) cycle = false;
        for (int u = 0; u < n_; ++u)
          if ((adj_[v] >> u & 1) && comp[u] == -1) {
            comp[u] = s;
            stack.push_back(u);
          }
      }
      if (!cycle) path_vertices += static_cast<int>(members.size());
    }
    return path_vertices == 0 || path_vertices >= 4;
  }

  void dfs(size_t k, int size) {
    if (done_) return;
    if (size + bound() <= best_) return;
    if (k == edges_.size()) {
      if (admissible()) {
        best_ = size;
        best_set_ = chosen_;
        if (best_ == n_) done_ = true;
      }
      return;
    }
    auto [u, v] = edges_[k];
    --rem_[u];
    --rem_[v];
    if (deg_[u] < 2 && deg_[v] < 2 && (adj_[u] & adj_[v]) == 0) {
      ++deg_[u];
      ++deg_[v];
      adj_[u] |= 1u << v;
      adj_[v] |= 1u << u;
      chosen_[k] = 1;
      dfs(k + 1, size + 1);
      chosen_[k] = 0;
      adj_[u] &= ~(1u << v);
      adj_[v] &= ~(1u << u);
      --deg_[u];
      --deg_[v];
    }
    dfs(k + 1, size);
    ++rem_[u];
    ++rem_[v];
  }

  int n_;
  const std::vector<std::pair<int, int>>& edges_;
  bool no_small_;
  std::vector<int> deg_;
  std::vector<unsigned> adj_;
  std::vector<int> rem_;
  std::vector<char> chosen_, best_set_;
  int best_ = -1;
  bool done_ = false;
};

}  // namespace

std::vector<std::pair<int, int>> BruteForceTriangleFreeMatcher::max_triangle_free_2matching(
    int n, const std::vector<std::pair<int, int>>& edges, bool no_small_path_part) const {
  if (n > max_n_) throw BudgetExceeded("triangle-free 2-matching: n exceeds the exact search limit");
  TfSearch s(n, edges, no_small_path_part);
  return s.run();
}

const TriangleFreeMatcher& default_triangle_free_matcher() {
  static const BruteForceTriangleFreeMatcher m;
  return m;
}

CycleCover triangle_free_from_simple_2matching(const Instance& inst, const std::vector<int>& subset,
                                               const TriangleFreeMatcher& matcher) {
  if (inst.weight_class() != WeightClass::one_two)
    throw PreconditionError("triangle-free 2-factor needs a one-two instance");
  const auto& vs = subset;
  const int k = static_cast<int>(vs.size());
  if (k == 0) return {};
  if (k < 4) throw PreconditionError("no triangle-free 2-factor on fewer than four vertices");

  std::vector<std::pair<int, int>> h;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (inst.w(vs[a], vs[b]) == inst.scale()) h.emplace_back(a, b);
  auto m = matcher.max_triangle_free_2matching(k, h, true);

  std::vector<std::vector<int>> adj(k);
  for (auto [a, b] : m) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  CycleCover cover;
  std::vector<char> seen(k, 0);
  std::vector<std::vector<int>> paths;
  for (int s = 0; s < k; ++s) {
    if (seen[s] || adj[s].size() == 2) continue;
    // Path endpoint (degree 0 or 1).
    std::vector<int> p;
    int prev = -1, cur = s;
    while (cur != -1) {
      seen[cur] = 1;
      p.push_back(vs[cur]);
      int nxt = -1;
      for (int t : adj[cur])
        if (t != prev) nxt = t;
      prev = cur;
      cur = nxt;
    }
    paths.push_back(std::move(p));
  }
  for (int s = 0; s < k; ++s) {
    if (seen[s]) continue;
    Cycle c;
    int prev = -1, cur = s;
    while (!seen[cur]) {
      seen[cur] = 1;
      c.vertices.push_back(vs[cur]);
      int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
    }
    require(c.size() >= 4, "triangle-free matcher returned a short cycle");
    cover.cycles.push_back(std::move(c));
  }
  if (!paths.empty()) {
    Cycle joined;
    for (auto& p : paths) joined.vertices.insert(joined.vertices.end(), p.begin(), p.end());
    require(joined.size() >= 4, "triangle-free adapter: joined path part too small");
    cover.cycles.push_back(std::move(joined));
  }
  return cover;
}

CycleCover min_weight_triangle_free_2factor(const Instance& inst, bool allow_pair_2cycles,
                                            const TriangleFreeMatcher& matcher) {
  if (inst.weight_class() != WeightClass::one_two)
    throw PreconditionError("triangle-free 2-factor needs a one-two instance");
  CycleCover plain = min_weight_2factor(inst, allow_pair_2cycles);
  if (!has_triangle(plain)) return plain;

  // Pair 2-cycles are handled by enumerating which size-two groups close up
  // on their own; the rest gets a triangle-free 2-factor without pairs.
  std::vector<int> pairs;
  if (allow_pair_2cycles)
    for (int g = 0; g < inst.group_count(); ++g)
      if (inst.groups()[g].size() == 2) pairs.push_back(g);
  if (pairs.size() > 16) throw BudgetExceeded("too many size-two groups");

  std::optional<CycleCover> best;
  Weight best_cost = 0;
  for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<char> taken(inst.size(), 0);
    CycleCover cover;
    for (size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) {
        const auto& g = inst.groups()[pairs[i]];
        cover.cycles.push_back(Cycle{{g[0], g[1]}, true});
        taken[g[0]] = taken[g[1]] = 1;
      }
    std::vector<int> rest;
    for (int v = 0; v < inst.size(); ++v)
      if (!taken[v]) rest.push_back(v);
    if (!rest.empty() && rest.size() < 4) continue;
    auto part = triangle_free_from_simple_2matching(inst, rest, matcher);
    for (auto& c : part.cycles) cover.cycles.push_back(std::move(c));
    Weight cost = cover_cost(inst, cover);
    if (!best || cost < best_cost) {
      best = std::move(cover);
      best_cost = cost;
    }
  }
  if (!best) throw PreconditionError("no triangle-free 2-factor exists");
  return *best;
}

CycleCover solve_two_factor(const Instance& inst, const TwoFactorRequest& req) {
  if (req.directed) {
    if (req.triangle_free) throw PreconditionError("triangle-free directed 2-factors are not supported");
    return min_weight_directed_2factor(inst);
  }
  if (req.triangle_free) return min_weight_triangle_free_2factor(inst, req.allow_pair_2cycles);
  return min_weight_2factor(inst, req.allow_pair_2cycles);
}

}  // namespace smc
