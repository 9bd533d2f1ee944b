#include "smc/asymmetric_approx.hpp"

#include <algorithm>
#include <numeric>

#include <gmpxx.h>

#include "smc/matching.hpp"
#include "smc/two_factor.hpp"

namespace smc {

int eta(const Instance& inst, const CycleCover& cover) {
  const auto d = disrespecting_cycles(inst, cover);
  return static_cast<int>(std::count(d.begin(), d.end(), true));
}

RepresentativeSet representatives(const Instance& inst, const CycleCover& cover) {
  const auto dis = disrespecting_cycles(inst, cover);
  const auto idx = cycle_index(inst.size(), cover);
  std::vector<int> nodes;  // auxiliary node -> cycle
  std::vector<int> node_of(cover.cycles.size(), -1);
  for (int c = 0; c < static_cast<int>(cover.cycles.size()); ++c)
    if (dis[c]) {
      node_of[c] = static_cast<int>(nodes.size());
      nodes.push_back(c);
    }
  if (nodes.empty()) throw PreconditionError("representatives need a disrespecting cycle");

  // Shared group of each adjacent pair: the smallest group index.
  const int k = static_cast<int>(nodes.size());
  std::vector<std::vector<int>> shared(k, std::vector<int>(k, -1));
  for (int g = 0; g < inst.group_count(); ++g) {
    std::vector<int> cs;
    for (int v : inst.groups()[g]) cs.push_back(idx[v]);
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    for (int a : cs)
      for (int b : cs)
        if (a != b && shared[node_of[a]][node_of[b]] < 0) shared[node_of[a]][node_of[b]] = g;
  }
  WeightedGraph aux(k);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (shared[a][b] >= 0) aux.add_edge(a, b, 1);
  for (int a = 0; a < k; ++a) {
    bool isolated = true;
    for (int b = 0; b < k; ++b) isolated = isolated && shared[a][b] < 0;
    require(!isolated, "disrespecting cycle shares no group with another cycle");
  }

  RepresentativeSet r;
  auto pick = [&](int cycle, int g) {
    int best = -1;
    for (int v : inst.groups()[g])
      if (idx[v] == cycle && (best < 0 || v < best)) best = v;
    return best;
  };
  for (int id : minimal_edge_cover(aux)) {
    const Edge& e = aux.edge(id);
    RepresentativeSet::Source s;
    s.cycle_a = nodes[e.u];
    s.cycle_b = nodes[e.v];
    s.group = shared[e.u][e.v];
    s.r_a = pick(s.cycle_a, s.group);
    s.r_b = pick(s.cycle_b, s.group);
    r.sources.push_back(s);
    r.vertices.push_back(s.r_a);
    r.vertices.push_back(s.r_b);
  }
  std::sort(r.vertices.begin(), r.vertices.end());
  r.vertices.erase(std::unique(r.vertices.begin(), r.vertices.end()), r.vertices.end());
  std::vector<int> per_cycle(cover.cycles.size(), 0);
  for (int v : r.vertices) ++per_cycle[idx[v]];
  for (int c = 0; c < static_cast<int>(cover.cycles.size()); ++c)
    if (per_cycle[c] == 1) r.lonely.push_back(c);
  if (auto why = representative_violation(inst, cover, r)) throw ContractViolation("representatives: " + *why);
  return r;
}

std::optional<std::string> representative_violation(const Instance& inst, const CycleCover& cover,
                                                    const RepresentativeSet& r) {
  const auto dis = disrespecting_cycles(inst, cover);
  const auto idx = cycle_index(inst.size(), cover);
  std::vector<int> per_cycle(cover.cycles.size(), 0);
  for (int v : r.vertices) ++per_cycle[idx[v]];
  int disrespecting = 0, lonely = 0;
  for (int c = 0; c < static_cast<int>(cover.cycles.size()); ++c) {
    if (!dis[c]) continue;
    ++disrespecting;
    if (per_cycle[c] == 0) return "cycle " + std::to_string(c) + " has no representative";
    lonely += per_cycle[c] == 1;
  }
  for (int g = 0; g < inst.group_count(); ++g) {
    int count = 0;
    for (int v : inst.groups()[g]) count += std::binary_search(r.vertices.begin(), r.vertices.end(), v);
    if (count == 1) return "group " + std::to_string(g) + " has a single representative";
  }
  if (2 * lonely < disrespecting)
    return std::to_string(lonely) + " lonely cycles out of " + std::to_string(disrespecting);
  return std::nullopt;
}

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

// Weak components among touched vertices, ignoring `skip`.
int count_components(int n, const ArcList& arcs, const std::vector<bool>& touched, int skip) {
  UnionFind uf(n);
  int comps = 0;
  for (int v = 0; v < n; ++v) comps += touched[v] && v != skip;
  for (auto [a, b] : arcs)
    if (a != skip && b != skip && uf.unite(a, b)) --comps;
  return comps;
}

std::vector<ArcList> split_components(int n, const ArcList& arcs) {
  UnionFind uf(n);
  for (auto [a, b] : arcs) uf.unite(a, b);
  std::vector<int> id(n, -1);
  std::vector<ArcList> out;
  for (auto [a, b] : arcs) {
    int root = uf.find(a);
    if (id[root] < 0) {
      id[root] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[id[root]].push_back({a, b});
  }
  return out;
}

}  // namespace

bool is_strongly_eulerian(int n, const ArcList& arcs, std::string* why) {
  std::vector<int> in(n, 0), out(n, 0);
  std::vector<bool> touched(n, false);
  for (auto [a, b] : arcs) {
    if (a == b) {
      if (why) *why = "loop at " + std::to_string(a);
      return false;
    }
    ++out[a];
    ++in[b];
    touched[a] = touched[b] = true;
  }
  const int base = count_components(n, arcs, touched, -1);
  for (int v = 0; v < n; ++v) {
    if (!touched[v]) continue;
    if (in[v] != out[v]) {
      if (why) *why = "unbalanced vertex " + std::to_string(v);
      return false;
    }
    const int after = count_components(n, arcs, touched, v);
    if (after - base != in[v] - 1) {
      if (why)
        *why = "removing " + std::to_string(v) + " adds " + std::to_string(after - base) + " components, k(v) = " +
               std::to_string(in[v]);
      return false;
    }
  }
  return true;
}

namespace {

CycleCover cycles_of_degree_one(int n, const ArcList& arcs) {
  std::vector<int> next(n, -1);
  std::vector<bool> touched(n, false);
  for (auto [a, b] : arcs) {
    next[a] = b;
    touched[a] = true;
  }
  CycleCover cover;
  cover.directed = true;
  std::vector<bool> seen(n, false);
  for (int s = 0; s < n; ++s) {
    if (!touched[s] || seen[s]) continue;
    Cycle c;
    for (int v = s; !seen[v]; v = next[v]) {
      seen[v] = true;
      c.vertices.push_back(v);
    }
    cover.cycles.push_back(std::move(c));
  }
  return cover;
}

}  // namespace

CycleCover directed_shortcut(const Instance& inst, ArcList arcs) {
  const int n = inst.size();
  std::string why;
  if (!is_strongly_eulerian(n, arcs, &why)) throw PreconditionError("directed shortcut: " + why);
  for (;;) {
    std::vector<int> out(n, 0);
    for (auto [a, b] : arcs) ++out[a];
    int v = -1;
    for (int x = 0; x < n && v < 0; ++x)
      if (out[x] > 1) v = x;
    if (v < 0) break;
    // Components of the digraph minus v, labelled by union-find roots.
    UnionFind uf(n);
    for (auto [a, b] : arcs)
      if (a != v && b != v) uf.unite(a, b);
    int i_in = -1, i_out = -1;
    for (int i = 0; i < static_cast<int>(arcs.size()) && i_in < 0; ++i)
      if (arcs[i].second == v) i_in = i;
    const int c1 = uf.find(arcs[i_in].first);
    for (int i = 0; i < static_cast<int>(arcs.size()) && i_out < 0; ++i)
      if (arcs[i].first == v && uf.find(arcs[i].second) != c1) i_out = i;
    require(i_out >= 0, "no second component adjacent to the vertex");
    const int u1 = arcs[i_in].first, w2 = arcs[i_out].second;
    require(inst.w(u1, w2) <= inst.w(u1, v) + inst.w(v, w2), "shortcut increases weight");
    arcs.erase(arcs.begin() + std::max(i_in, i_out));
    arcs.erase(arcs.begin() + std::min(i_in, i_out));
    arcs.push_back({u1, w2});
  }
  return cycles_of_degree_one(n, arcs);
}

CycleCover euler_shortcut(const Instance& inst, const ArcList& arcs) {
  const int n = inst.size();
  CycleCover cover;
  cover.directed = true;
  for (const auto& comp : split_components(n, arcs)) {
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : comp) adj[a].push_back(b);
    for (auto& l : adj) std::sort(l.rbegin(), l.rend());  // pop_back takes the smallest
    int start = n;
    for (auto [a, b] : comp) start = std::min(start, a);
    // Hierholzer.
    std::vector<int> stack{start}, circuit;
    while (!stack.empty()) {
      int v = stack.back();
      if (adj[v].empty()) {
        circuit.push_back(v);
        stack.pop_back();
      } else {
        int w = adj[v].back();
        adj[v].pop_back();
        stack.push_back(w);
      }
    }
    require(circuit.size() == comp.size() + 1, "component is not Eulerian");
    std::reverse(circuit.begin(), circuit.end());
    std::vector<bool> seen(n, false);
    Cycle c;
    for (int v : circuit)
      if (!seen[v]) {
        seen[v] = true;
        c.vertices.push_back(v);
      }
    cover.cycles.push_back(std::move(c));
  }
  return cover;
}

int asymmetric_iteration_limit(int n) {
  // Smallest k with 4^k >= n * 3^k.
  mpz_class four = 1, three = 1;
  int k = 0;
  while (four < three * n) {
    four *= 4;
    three *= 3;
    ++k;
  }
  return k + 1;
}

CycleCover approx_asymmetric(const Instance& inst, AsymTrace* trace) {
  const int n = inst.size();
  AsymTrace local;
  AsymTrace& t = trace ? *trace : local;
  t = AsymTrace{};
  CycleCover cur = min_weight_directed_2factor(inst);
  t.initial = cur;
  t.initial_weight = cover_cost(inst, cur);
  for (int e = eta(inst, cur); e > 0; e = eta(inst, cur)) {
    AsymIteration it;
    it.eta_before = e;
    it.r = representatives(inst, cur);
    it.inner = min_weight_directed_2factor(inst, it.r.vertices);
    for (const auto& c : it.inner.cycles) it.inner_weight += cycle_cost(inst, c);
    ArcList arcs;
    for (const auto* c : {&cur, &it.inner})
      for (const auto& cyc : c->cycles)
        for (auto a : cycle_edges(cyc)) arcs.push_back(a);
    CycleCover next;
    next.directed = true;
    const auto comps = split_components(n, arcs);
    it.components = static_cast<int>(comps.size());
    for (const auto& comp : comps) {
      CycleCover part;
      if (is_strongly_eulerian(n, comp)) {
        part = directed_shortcut(inst, comp);
      } else {
        ++it.fallback_components;
        part = euler_shortcut(inst, comp);
      }
      require(part.cycles.size() == 1, "component did not become one cycle");
      for (auto& c : part.cycles) next.cycles.push_back(std::move(c));
    }
    t.fallbacks += it.fallback_components;
    if (auto rep = check_two_factor(inst, next); !rep.ok())
      throw ContractViolation("asymmetric step lost the 2-factor: " + rep.summary());
    cur = canonical(next);
    it.eta_after = eta(inst, cur);
    it.weight_after = cover_cost(inst, cur);
    require(4 * it.eta_after <= 3 * it.eta_before, "eta did not shrink by 3/4");
    t.iterations.push_back(std::move(it));
    require(t.factor_count() <= asymmetric_iteration_limit(n), "iteration limit exceeded");
  }
  if (auto rep = validate_solution(inst, cur); !rep.ok())
    throw ContractViolation("asymmetric result infeasible: " + rep.summary());
  return cur;
}

}  // namespace smc
