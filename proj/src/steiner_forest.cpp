#include "smc/steiner_forest.hpp"

#include <numeric>

#include <gmpxx.h>

namespace smc {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

bool connects_groups(const Instance& inst, const std::vector<std::pair<int, int>>& edges) {
  UnionFind uf(inst.size());
  for (auto [u, v] : edges) uf.unite(u, v);
  for (const auto& g : inst.groups())
    for (int v : g)
      if (uf.find(v) != uf.find(g[0])) return false;
  return true;
}

}  // namespace

EdgeSubgraph primal_dual_steiner_forest(const Instance& inst) {
  if (!inst.symmetric()) throw PreconditionError("steiner forest needs a symmetric instance");
  const int n = inst.size();
  std::vector<std::pair<int, int>> cand;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) cand.emplace_back(u, v);
  std::vector<mpq_class> load(cand.size(), 0);
  std::vector<char> in_forest(cand.size(), 0);
  std::vector<int> order;
  UnionFind uf(n);

  auto active = [&](int root) {
    for (const auto& g : inst.groups()) {
      int in = 0;
      for (int v : g) in += uf.find(v) == root;
      if (in > 0 && in < static_cast<int>(g.size())) return true;
    }
    return false;
  };

  while (true) {
    std::vector<int> act(n, 0);
    bool any = false;
    for (int v = 0; v < n; ++v)
      if (uf.find(v) == v && active(v)) {
        act[v] = 1;
        any = true;
      }
    if (!any) break;
    int best = -1;
    mpq_class best_eps;
    for (size_t e = 0; e < cand.size(); ++e) {
      int a = uf.find(cand[e].first), b = uf.find(cand[e].second);
      if (a == b) continue;
      int rate = act[a] + act[b];
      if (rate == 0) continue;
      mpq_class eps = (mpq_class(inst.w(cand[e].first, cand[e].second)) - load[e]) / rate;
      if (best == -1 || eps < best_eps) {
        best = static_cast<int>(e);
        best_eps = eps;
      }
    }
    require(best != -1, "primal-dual forest: no edge can become tight");
    for (size_t e = 0; e < cand.size(); ++e) {
      int a = uf.find(cand[e].first), b = uf.find(cand[e].second);
      if (a != b) load[e] += best_eps * (act[a] + act[b]);
    }
    in_forest[best] = 1;
    order.push_back(best);
    uf.unite(cand[best].first, cand[best].second);
  }

  // Reverse deletion of edges not needed for any group.
  std::vector<char> keep = in_forest;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    keep[*it] = 0;
    std::vector<std::pair<int, int>> rest;
    for (size_t e = 0; e < cand.size(); ++e)
      if (keep[e]) rest.push_back(cand[e]);
    if (!connects_groups(inst, rest)) keep[*it] = 1;
  }
  EdgeSubgraph f;
  f.n = n;
  for (int e : order)
    if (keep[e]) f.add(cand[e].first, cand[e].second);
  return f;
}

}  // namespace smc
