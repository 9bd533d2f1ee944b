#include "smc/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace smc {

namespace {

constexpr Weight kInf = std::numeric_limits<Weight>::max() / 4;

void check_budget(int n, int limit, const char* what) {
  if (n > limit)
    throw BudgetExceeded(std::string(what) + ": n = " + std::to_string(n) + " exceeds limit " +
                         std::to_string(limit));
}

class Deadline {
 public:
  explicit Deadline(std::chrono::milliseconds limit)
      : end_(std::chrono::steady_clock::now() + limit) {}
  void tick(const char* what) {
    if (++count_ % 4096 == 0 && std::chrono::steady_clock::now() > end_)
      throw BudgetExceeded(std::string(what) + ": time limit reached");
  }

 private:
  std::chrono::steady_clock::time_point end_;
  std::uint64_t count_ = 0;
};

std::vector<unsigned> group_masks(const Instance& inst) {
  std::vector<unsigned> out;
  for (const auto& g : inst.groups()) {
    unsigned m = 0;
    for (int v : g) m |= 1u << v;
    out.push_back(m);
  }
  return out;
}

}  // namespace

OracleSolution brute_force_smc(const Instance& inst, const OracleBudget& budget) {
  const int n = inst.size();
  check_budget(n, inst.symmetric() ? budget.max_n_symmetric : budget.max_n_directed, "smc oracle");
  const unsigned full = 1u << n;
  // dp[mask][v]: cheapest path from the lowest vertex of mask through all of
  // mask ending in v.
  std::vector<Weight> dp(static_cast<size_t>(full) * n, kInf);
  std::vector<signed char> parent(static_cast<size_t>(full) * n, -1);
  auto at = [n](unsigned mask, int v) { return static_cast<size_t>(mask) * n + v; };
  for (int s = 0; s < n; ++s) dp[at(1u << s, s)] = 0;
  for (unsigned mask = 1; mask < full; ++mask) {
    int start = __builtin_ctz(mask);
    for (int v = 0; v < n; ++v) {
      Weight cur = dp[at(mask, v)];
      if (cur >= kInf) continue;
      for (int u = start + 1; u < n; ++u) {
        if (mask >> u & 1) continue;
        Weight cand = cur + inst.w(v, u);
        size_t idx = at(mask | 1u << u, u);
        if (cand < dp[idx]) {
          dp[idx] = cand;
          parent[idx] = static_cast<signed char>(v);
        }
      }
    }
  }
  auto cycle_of = [&](unsigned mask, Weight& cost) {
    int start = __builtin_ctz(mask);
    int best_v = -1;
    cost = kInf;
    for (int v = 0; v < n; ++v) {
      if (v == start || !(mask >> v & 1)) continue;
      Weight c = dp[at(mask, v)] + inst.w(v, start);
      if (c < cost) {
        cost = c;
        best_v = v;
      }
    }
    Cycle cyc;
    for (int v = best_v; v != -1;) {
      cyc.vertices.push_back(v);
      int p = parent[at(mask, v)];
      mask &= ~(1u << v);
      v = p;
    }
    std::reverse(cyc.vertices.begin(), cyc.vertices.end());
    cyc.pair = inst.symmetric() && cyc.size() == 2;
    return cyc;
  };

  auto gm = group_masks(inst);
  const int k = static_cast<int>(gm.size());
  const unsigned gfull = 1u << k;
  std::vector<unsigned> vmask(gfull, 0);
  for (unsigned s = 1; s < gfull; ++s) vmask[s] = vmask[s & (s - 1)] | gm[__builtin_ctz(s)];
  std::vector<Weight> cyc_cost(gfull, kInf);
  for (unsigned s = 1; s < gfull; ++s) {
    Weight c;
    cycle_of(vmask[s], c);
    cyc_cost[s] = c;
  }
  std::vector<Weight> best(gfull, kInf);
  std::vector<unsigned> choice(gfull, 0);
  best[0] = 0;
  for (unsigned s = 1; s < gfull; ++s) {
    unsigned low = s & (~s + 1);
    for (unsigned sub = s; sub; sub = (sub - 1) & s) {
      if (!(sub & low)) continue;
      Weight c = cyc_cost[sub] + best[s & ~sub];
      if (c < best[s]) {
        best[s] = c;
        choice[s] = sub;
      }
    }
  }
  OracleSolution sol;
  sol.cost = best[gfull - 1];
  sol.cover.directed = !inst.symmetric();
  for (unsigned s = gfull - 1; s; s &= ~choice[s]) {
    Weight c;
    sol.cover.cycles.push_back(cycle_of(vmask[choice[s]], c));
  }
  require(cover_cost(inst, sol.cover) == sol.cost, "smc oracle: reconstruction mismatch");
  require(respects_groups(inst, sol.cover), "smc oracle: reconstruction splits a group");
  return sol;
}

Weight enumerate_smc(const Instance& inst, const OracleBudget& budget) {
  const int n = inst.size();
  check_budget(n, budget.max_n_permutation, "permutation oracle");
  std::vector<int> succ(n, -1);
  std::vector<char> used(n, 0);
  Weight best = kInf;
  auto finish = [&](Weight cost) {
    std::vector<int> cyc_id(n, -1);
    int id = 0;
    for (int s = 0; s < n; ++s) {
      if (cyc_id[s] != -1) continue;
      int len = 0;
      for (int v = s; cyc_id[v] == -1; v = succ[v]) {
        cyc_id[v] = id;
        ++len;
      }
      if (len == 2 && inst.symmetric() && !inst.is_pair(s, succ[s])) return;
      ++id;
    }
    for (const auto& g : inst.groups())
      for (int v : g)
        if (cyc_id[v] != cyc_id[g[0]]) return;
    best = std::min(best, cost);
  };
  auto rec = [&](auto&& self, int v, Weight cost) -> void {
    if (cost >= best) return;
    if (v == n) {
      finish(cost);
      return;
    }
    for (int t = 0; t < n; ++t) {
      if (t == v || used[t]) continue;
      used[t] = 1;
      succ[v] = t;
      self(self, v + 1, cost + inst.w(v, t));
      used[t] = 0;
    }
  };
  rec(rec, 0, 0);
  if (best >= kInf) throw PreconditionError("no feasible solution");
  return best;
}

namespace {

// Undirected cycle-cover enumeration. Each cover is produced once: a cycle
// starts at its smallest vertex and its second vertex is below its last.
class UndirectedEnumerator {
 public:
  UndirectedEnumerator(const Instance& inst, const TwoFactorQuery& q, bool collect_all)
      : inst_(inst), q_(q), all_(collect_all), n_(inst.size()), covered_(n_, 0) {}

  void run() { next_cycle(0); }

  Weight best = kInf;
  std::vector<CycleCover> found;

 private:
  void record(Weight cost) {
    if (cost < best) {
      best = cost;
      found.clear();
    }
    if (all_ || found.empty()) found.push_back(CycleCover{cycles_, false});
    else found[0] = CycleCover{cycles_, false};
  }

  bool pruned(Weight cost) const { return all_ ? cost > best : cost >= best; }

  void next_cycle(Weight cost) {
    if (pruned(cost)) return;
    int v = 0;
    while (v < n_ && covered_[v]) ++v;
    if (v == n_) {
      record(cost);
      return;
    }
    covered_[v] = 1;
    for (int u = v + 1; u < n_; ++u) {
      if (covered_[u]) continue;
      if (q_.allow_pair_2cycles && inst_.is_pair(v, u)) {
        covered_[u] = 1;
        cycles_.push_back(Cycle{{v, u}, true});
        next_cycle(cost + 2 * inst_.w(v, u));
        cycles_.pop_back();
        covered_[u] = 0;
      }
    }
    path_ = {v};
    extend(cost);
    covered_[v] = 0;
  }

  void extend(Weight cost) {
    if (pruned(cost)) return;
    const int min_len = q_.triangle_free ? 4 : 3;
    const int last = path_.back();
    const int len = static_cast<int>(path_.size());
    if (len >= min_len && path_[1] < last) {
      auto saved = path_;
      cycles_.push_back(Cycle{path_, false});
      next_cycle(cost + inst_.w(last, path_[0]));
      cycles_.pop_back();
      path_ = std::move(saved);
    }
    for (int u = path_[0] + 1; u < n_; ++u) {
      if (covered_[u]) continue;
      covered_[u] = 1;
      path_.push_back(u);
      extend(cost + inst_.w(last, u));
      path_.pop_back();
      covered_[u] = 0;
    }
  }

  const Instance& inst_;
  TwoFactorQuery q_;
  bool all_;
  int n_;
  std::vector<char> covered_;
  std::vector<int> path_;
  std::vector<Cycle> cycles_;
};

}  // namespace

OracleSolution brute_force_2factor(const Instance& inst, const TwoFactorQuery& q, const OracleBudget& budget) {
  const int n = inst.size();
  OracleSolution sol;
  if (q.directed) {
    check_budget(n, budget.max_n_2factor_directed, "directed 2-factor oracle");
    std::vector<int> succ(n, -1), best_succ;
    std::vector<char> used(n, 0);
    Weight best = kInf;
    auto rec = [&](auto&& self, int v, Weight cost) -> void {
      if (cost >= best) return;
      if (v == n) {
        best = cost;
        best_succ = succ;
        return;
      }
      for (int t = 0; t < n; ++t) {
        if (t == v || used[t]) continue;
        used[t] = 1;
        succ[v] = t;
        self(self, v + 1, cost + inst.w(v, t));
        used[t] = 0;
      }
    };
    rec(rec, 0, 0);
    if (best >= kInf) throw PreconditionError("no directed 2-factor");
    sol.cost = best;
    sol.cover.directed = true;
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
      if (seen[s]) continue;
      Cycle c;
      for (int v = s; !seen[v]; v = best_succ[v]) {
        seen[v] = 1;
        c.vertices.push_back(v);
      }
      sol.cover.cycles.push_back(std::move(c));
    }
    return sol;
  }
  check_budget(n, budget.max_n_2factor, "2-factor oracle");
  UndirectedEnumerator e(inst, q, false);
  e.run();
  if (e.found.empty()) throw PreconditionError("no 2-factor of the requested kind");
  sol.cost = e.best;
  sol.cover = e.found[0];
  return sol;
}

std::vector<CycleCover> all_min_2factors(const Instance& inst, const TwoFactorQuery& q, int max_n) {
  if (q.directed) throw PreconditionError("all_min_2factors is undirected only");
  check_budget(inst.size(), max_n, "2-factor enumeration");
  UndirectedEnumerator e(inst, q, true);
  e.run();
  return e.found;
}

SndSolution brute_force_snd(const Instance& inst, const OracleBudget& budget) {
  const int n = inst.size();
  check_budget(n, budget.max_n_snd, "snd oracle");
  if (!inst.symmetric()) throw PreconditionError("snd oracle needs a symmetric instance");
  auto req = build_requirements(inst);

  struct Cand {
    int u, v;
    Weight w;
  };
  std::vector<Cand> cands;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int c = 0; c < (inst.is_pair(u, v) ? 2 : 1); ++c) cands.push_back({u, v, inst.w(u, v)});
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.w < b.w; });
  const int m = static_cast<int>(cands.size());

  // Any group-respecting cycle cover is feasible, so the optimum cover
  // gives the starting incumbent.
  auto smc = brute_force_smc(inst, budget);
  SndSolution best;
  best.cost = smc.cost;
  best.edges.n = n;
  for (const auto& c : smc.cover.cycles)
    for (auto [u, v] : cycle_edges(c)) best.edges.add(u, v);

  std::vector<char> state(m, 0);  // 0 undecided, 1 taken, 2 excluded
  std::vector<int> deg(n, 0);
  Deadline deadline(budget.time_limit);

  auto lower_bound = [&](Weight cost) {
    // Every vertex needs degree two; complete it with the cheapest undecided edges.
    Weight extra = 0;
    for (int v = 0; v < n; ++v) {
      int need = 2 - deg[v];
      for (int i = 0; i < m && need > 0; ++i)
        if (state[i] == 0 && (cands[i].u == v || cands[i].v == v)) {
          extra += cands[i].w;
          --need;
        }
      if (need > 0) return kInf;
    }
    return cost + (extra + 1) / 2;
  };
  auto graph_of = [&](bool include_undecided) {
    EdgeSubgraph g;
    g.n = n;
    for (int i = 0; i < m; ++i)
      if (state[i] == 1 || (include_undecided && state[i] == 0)) g.add(cands[i].u, cands[i].v);
    return g;
  };

  auto rec = [&](auto&& self, int i, Weight cost) -> void {
    deadline.tick("snd oracle");
    if (lower_bound(cost) >= best.cost) return;
    auto taken = graph_of(false);
    if (satisfies_requirements(req, taken)) {
      best.cost = cost;
      best.edges = taken;
      return;
    }
    if (i == m) return;
    state[i] = 1;
    ++deg[cands[i].u];
    ++deg[cands[i].v];
    self(self, i + 1, cost + cands[i].w);
    --deg[cands[i].u];
    --deg[cands[i].v];
    state[i] = 2;
    if (satisfies_requirements(req, graph_of(true))) self(self, i + 1, cost);
    state[i] = 0;
  };
  rec(rec, 0, 0);
  return best;
}

SndSolution brute_force_steiner_forest(const Instance& inst, const OracleBudget& budget) {
  const int n = inst.size();
  check_budget(n, budget.max_n_forest, "steiner forest oracle");
  if (!inst.symmetric()) throw PreconditionError("steiner forest oracle needs a symmetric instance");
  auto gm = group_masks(inst);
  const int k = static_cast<int>(gm.size());
  const unsigned gfull = 1u << k;

  // Every vertex is a terminal, so a block's cheapest tree is its MST.
  auto mst = [&](unsigned vmask, std::vector<std::pair<int, int>>* edges) {
    std::vector<int> vs;
    for (int v = 0; v < n; ++v)
      if (vmask >> v & 1) vs.push_back(v);
    const int s = static_cast<int>(vs.size());
    std::vector<Weight> dist(s, kInf);
    std::vector<int> from(s, -1);
    std::vector<char> in(s, 0);
    dist[0] = 0;
    Weight total = 0;
    for (int it = 0; it < s; ++it) {
      int b = -1;
      for (int i = 0; i < s; ++i)
        if (!in[i] && (b == -1 || dist[i] < dist[b])) b = i;
      in[b] = 1;
      total += dist[b];
      if (from[b] != -1 && edges) edges->emplace_back(vs[from[b]], vs[b]);
      for (int i = 0; i < s; ++i)
        if (!in[i] && inst.w(vs[b], vs[i]) < dist[i]) {
          dist[i] = inst.w(vs[b], vs[i]);
          from[i] = b;
        }
    }
    return total;
  };

  std::vector<unsigned> vmask(gfull, 0);
  for (unsigned s = 1; s < gfull; ++s) vmask[s] = vmask[s & (s - 1)] | gm[__builtin_ctz(s)];
  std::vector<Weight> tree(gfull, 0), best(gfull, kInf);
  std::vector<unsigned> choice(gfull, 0);
  for (unsigned s = 1; s < gfull; ++s) tree[s] = mst(vmask[s], nullptr);
  best[0] = 0;
  for (unsigned s = 1; s < gfull; ++s) {
    unsigned low = s & (~s + 1);
    for (unsigned sub = s; sub; sub = (sub - 1) & s) {
      if (!(sub & low)) continue;
      Weight c = tree[sub] + best[s & ~sub];
      if (c < best[s]) {
        best[s] = c;
        choice[s] = sub;
      }
    }
  }
  SndSolution sol;
  sol.cost = best[gfull - 1];
  sol.edges.n = n;
  for (unsigned s = gfull - 1; s; s &= ~choice[s]) {
    std::vector<std::pair<int, int>> es;
    mst(vmask[choice[s]], &es);
    for (auto [u, v] : es) sol.edges.add(u, v);
  }
  require(sol.edges.weight(inst) == sol.cost, "forest oracle: reconstruction mismatch");
  return sol;
}

}  // namespace smc
