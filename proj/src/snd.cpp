#include "smc/snd.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <queue>

namespace smc {

bool SndRequirements::splits_group(const std::vector<char>& in_w) const {
  for (const auto& g : groups) {
    bool any_in = false, any_out = false;
    for (int v : g) (in_w[v] ? any_in : any_out) = true;
    if (any_in && any_out) return true;
  }
  return false;
}

SndRequirements build_requirements(const Instance& inst) {
  SndRequirements r;
  r.n = inst.size();
  r.groups = inst.groups();
  r.group_of.resize(r.n);
  for (int v = 0; v < r.n; ++v) r.group_of[v] = inst.group_of(v);
  return r;
}

void EdgeSubgraph::add(int u, int v) {
  if (u == v) throw PreconditionError("loops are not allowed");
  edges.emplace_back(std::min(u, v), std::max(u, v));
}

Weight EdgeSubgraph::weight(const Instance& inst) const {
  Weight s = 0;
  for (auto [u, v] : edges) s += inst.w(u, v);
  return s;
}

int EdgeSubgraph::multiplicity(int u, int v) const {
  auto key = std::make_pair(std::min(u, v), std::max(u, v));
  return static_cast<int>(std::count(edges.begin(), edges.end(), key));
}

int EdgeSubgraph::degree(int v) const {
  int d = 0;
  for (auto [a, b] : edges) d += (a == v) + (b == v);
  return d;
}

std::vector<int> find_bridges(const EdgeSubgraph& g) {
  const int n = g.n;
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int id = 0; id < g.edge_count(); ++id) {
    auto [u, v] = g.edges[id];
    adj[u].push_back({v, id});
    adj[v].push_back({u, id});
  }
  std::vector<int> tin(n, -1), low(n, 0), bridges;
  int timer = 0;
  auto dfs = [&](auto&& self, int v, int parent_edge) -> void {
    tin[v] = low[v] = timer++;
    for (auto [to, id] : adj[v]) {
      if (id == parent_edge) continue;
      if (tin[to] != -1) {
        low[v] = std::min(low[v], tin[to]);
      } else {
        self(self, to, id);
        low[v] = std::min(low[v], low[to]);
        if (low[to] > tin[v]) bridges.push_back(id);
      }
    }
  };
  for (int v = 0; v < n; ++v)
    if (tin[v] == -1) dfs(dfs, v, -1);
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

std::vector<int> components(const EdgeSubgraph& g) {
  std::vector<int> comp(g.n);
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (auto [u, v] : g.edges) {
    int a = find(u), b = find(v);
    if (a != b) comp[std::max(a, b)] = std::min(a, b);
  }
  for (int v = 0; v < g.n; ++v) comp[v] = find(v);
  return comp;
}

bool satisfies_requirements(const SndRequirements& req, const EdgeSubgraph& g) {
  auto bridges = find_bridges(g);
  EdgeSubgraph rest;
  rest.n = g.n;
  size_t bi = 0;
  for (int id = 0; id < g.edge_count(); ++id) {
    if (bi < bridges.size() && bridges[bi] == id) {
      ++bi;
      continue;
    }
    rest.edges.push_back(g.edges[id]);
  }
  auto comp = components(rest);
  for (const auto& grp : req.groups)
    for (int v : grp)
      if (comp[v] != comp[grp[0]]) return false;
  return true;
}

EdgeSubgraph prune_bridges(const EdgeSubgraph& g, const SndRequirements& req) {
  EdgeSubgraph cur = g;
  while (true) {
    auto bridges = find_bridges(cur);
    if (bridges.empty()) break;
    EdgeSubgraph next;
    next.n = cur.n;
    size_t bi = 0;
    for (int id = 0; id < cur.edge_count(); ++id) {
      if (bi < bridges.size() && bridges[bi] == id) {
        ++bi;
        continue;
      }
      next.edges.push_back(cur.edges[id]);
    }
    cur = std::move(next);
  }
  require(satisfies_requirements(req, cur), "bridge pruning broke feasibility");
  return cur;
}

namespace {

// Primal simplex on the dual of the covering LP
//   min c.x  s.t.  A x >= b,  0 <= x <= 1.
// Dual: max b.y - 1.z  s.t.  A^T y - z + s = c,  y, z, s >= 0.
// Rows are the primal variables; columns are z (0..m-1), s (m..2m-1) and one
// y column per covering constraint. Since c >= 0 the slack basis is feasible.
// The primal optimum is read from the reduced costs of the s columns.
class CoveringLp {
 public:
  explicit CoveringLp(std::vector<mpq_class> cost) : m_(static_cast<int>(cost.size())) {
    rows_.assign(m_, std::vector<mpq_class>(2 * m_));
    for (int i = 0; i < m_; ++i) {
      rows_[i][i] = -1;
      rows_[i][m_ + i] = 1;
    }
    rhs_ = std::move(cost);
    basis_.resize(m_);
    std::iota(basis_.begin(), basis_.end(), m_);
    d_.assign(2 * m_, 0);
    for (int i = 0; i < m_; ++i) d_[i] = 1;
  }

  void add_constraint(const std::vector<int>& support, const mpq_class& b) {
    for (int i = 0; i < m_; ++i) {
      mpq_class s = 0;
      for (int e : support) s += rows_[i][m_ + e];
      rows_[i].push_back(s);
    }
    mpq_class dn = -b;
    for (int e : support) dn += d_[m_ + e];
    d_.push_back(dn);
  }

  int solve() {
    int pivots = 0, degenerate_run = 0;
    const int ncols = static_cast<int>(d_.size());
    while (true) {
      int j = -1;
      if (degenerate_run < 20) {
        for (int c = 0; c < ncols; ++c)
          if (sgn(d_[c]) < 0 && (j == -1 || d_[c] < d_[j])) j = c;
      } else {
        for (int c = 0; c < ncols && j == -1; ++c)
          if (sgn(d_[c]) < 0) j = c;
      }
      if (j == -1) return pivots;
      int r = -1;
      mpq_class best;
      for (int i = 0; i < m_; ++i) {
        if (sgn(rows_[i][j]) <= 0) continue;
        mpq_class ratio = rhs_[i] / rows_[i][j];
        if (r == -1 || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == -1) throw ContractViolation("cut LP is infeasible");
      degenerate_run = sgn(best) == 0 ? degenerate_run + 1 : 0;
      pivot(r, j);
      ++pivots;
    }
  }

  mpq_class primal(int e) const { return d_[m_ + e]; }
  const mpq_class& value() const { return value_; }

 private:
  void pivot(int r, int j) {
    auto& pr = rows_[r];
    const int ncols = static_cast<int>(pr.size());
    mpq_class piv = pr[j];
    std::vector<int> nz;
    for (int c = 0; c < ncols; ++c)
      if (sgn(pr[c]) != 0) {
        pr[c] /= piv;
        nz.push_back(c);
      }
    rhs_[r] /= piv;
    mpq_class f;
    for (int i = 0; i < m_; ++i) {
      if (i == r || sgn(rows_[i][j]) == 0) continue;
      f = rows_[i][j];
      auto& ri = rows_[i];
      for (int c : nz) ri[c] -= f * pr[c];
      rhs_[i] -= f * rhs_[r];
    }
    if (sgn(d_[j]) != 0) {
      f = d_[j];
      for (int c : nz) d_[c] -= f * pr[c];
      value_ -= f * rhs_[r];
    }
    basis_[r] = j;
  }

  int m_;
  std::vector<std::vector<mpq_class>> rows_;
  std::vector<mpq_class> rhs_, d_;
  std::vector<int> basis_;
  mpq_class value_ = 0;
};

using CutSet = std::vector<char>;

// Edge capacities as a dense symmetric matrix.
struct Capacity {
  int n;
  std::vector<mpq_class> c;
  mpq_class& at(int u, int v) { return c[static_cast<size_t>(u) * n + v]; }
  const mpq_class& at(int u, int v) const { return c[static_cast<size_t>(u) * n + v]; }
};

// Returns nullopt if the capacities cannot be scaled to small integers.
std::optional<std::vector<CutSet>> separate_exhaustive(const SndRequirements& req, const Capacity& cap,
                                                       size_t limit) {
  const int n = req.n;
  mpz_class den = 1;
  for (const auto& q : cap.c) den = lcm(den, mpz_class(q.get_den()));
  if (den > mpz_class(1) << 40) return std::nullopt;
  std::vector<std::int64_t> ic(cap.c.size());
  for (size_t i = 0; i < cap.c.size(); ++i) {
    mpz_class v = cap.c[i].get_num() * (den / cap.c[i].get_den());
    ic[i] = v.get_si();
  }
  const std::int64_t need = 2 * den.get_si();
  std::vector<unsigned> gmask;
  for (const auto& g : req.groups) {
    unsigned m = 0;
    for (int v : g) m |= 1u << v;
    gmask.push_back(m);
  }
  // Gray-code walk over subsets of {0..n-2}; vertex n-1 stays outside W.
  struct Hit {
    std::int64_t violation;
    unsigned mask;
  };
  std::vector<Hit> hits;
  unsigned mask = 0;
  std::int64_t cut = 0;
  const unsigned total = 1u << (n - 1);
  for (unsigned i = 1; i < total; ++i) {
    int v = __builtin_ctz(i);
    std::int64_t in = 0, out = 0;
    for (int u = 0; u < n; ++u) {
      if (u == v) continue;
      (mask >> u & 1 ? in : out) += ic[static_cast<size_t>(v) * n + u];
    }
    if (mask >> v & 1) cut += in - out;
    else cut += out - in;
    mask ^= 1u << v;
    if (cut >= need) continue;
    bool splits = false;
    for (unsigned gm : gmask)
      if ((mask & gm) && (mask & gm) != gm) {
        splits = true;
        break;
      }
    if (splits) hits.push_back({need - cut, mask});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return a.violation != b.violation ? a.violation > b.violation : a.mask < b.mask;
  });
  std::vector<CutSet> out;
  for (size_t i = 0; i < hits.size() && i < limit; ++i) {
    CutSet w(n, 0);
    for (int v = 0; v < n; ++v) w[v] = hits[i].mask >> v & 1;
    out.push_back(std::move(w));
  }
  return out;
}

// Max-flow separation: for each group and each member t, a minimum cut
// between the first member and t.
std::vector<CutSet> separate_by_flow(const SndRequirements& req, const Capacity& cap) {
  const int n = req.n;
  std::vector<CutSet> out;
  for (const auto& g : req.groups) {
    for (size_t ti = 1; ti < g.size(); ++ti) {
      int s = g[0], t = g[ti];
      std::vector<mpq_class> res = cap.c;
      mpq_class flow = 0;
      while (flow < 2) {
        std::vector<int> prev(n, -1);
        prev[s] = s;
        std::queue<int> q;
        q.push(s);
        while (!q.empty() && prev[t] == -1) {
          int v = q.front();
          q.pop();
          for (int u = 0; u < n; ++u)
            if (prev[u] == -1 && sgn(res[static_cast<size_t>(v) * n + u]) > 0) {
              prev[u] = v;
              q.push(u);
            }
        }
        if (prev[t] == -1) break;
        mpq_class aug = 2 - flow;
        for (int v = t; v != s; v = prev[v]) aug = std::min(aug, mpq_class(res[static_cast<size_t>(prev[v]) * n + v]));
        for (int v = t; v != s; v = prev[v]) {
          res[static_cast<size_t>(prev[v]) * n + v] -= aug;
          res[static_cast<size_t>(v) * n + prev[v]] += aug;
        }
        flow += aug;
      }
      if (flow >= 2) continue;
      CutSet w(n, 0);
      std::vector<int> stack{s};
      w[s] = 1;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < n; ++u)
          if (!w[u] && sgn(res[static_cast<size_t>(v) * n + u]) > 0) {
            w[u] = 1;
            stack.push_back(u);
          }
      }
      if (w[n - 1])
        for (auto& b : w) b = !b;
      if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace

FractionalEdgeVector solve_cut_lp(const Instance& inst, const SndRequirements& req,
                                  const EdgeSubgraph& fixed, LpStats* stats, std::ostream* log) {
  const int n = inst.size();
  if (!inst.symmetric()) throw PreconditionError("cut LP needs a symmetric instance");
  FractionalEdgeVector out;
  std::vector<int> fixed_mult(static_cast<size_t>(n) * n, 0);
  for (auto [u, v] : fixed.edges) {
    ++fixed_mult[static_cast<size_t>(u) * n + v];
    ++fixed_mult[static_cast<size_t>(v) * n + u];
  }
  std::vector<mpq_class> cost;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      int cap = inst.is_pair(u, v) ? 2 : 1;
      for (int c = fixed_mult[static_cast<size_t>(u) * n + v]; c < cap; ++c) {
        out.edges.push_back({u, v, c});
        cost.push_back(inst.w(u, v));
      }
    }
  const int m = static_cast<int>(out.edges.size());

  auto crossing = [&](const CutSet& w) {
    std::vector<int> support;
    for (int e = 0; e < m; ++e)
      if (w[out.edges[e].u] != w[out.edges[e].v]) support.push_back(e);
    int fixed_cross = 0;
    for (auto [u, v] : fixed.edges) fixed_cross += w[u] != w[v];
    return std::make_pair(support, 2 - fixed_cross);
  };

  CoveringLp lp(cost);
  std::vector<CutSet> cuts;
  auto add_cut = [&](const CutSet& w) {
    auto [support, rhs] = crossing(w);
    if (rhs <= 0) return;
    if (support.empty()) throw ContractViolation("cut LP has an unsatisfiable cut");
    lp.add_constraint(support, rhs);
    cuts.push_back(w);
  };
  for (int v = 0; v < n; ++v) {
    CutSet w(n, 0);
    w[v] = 1;
    if (v == n - 1)
      for (auto& b : w) b = !b;
    add_cut(w);
  }

  LpStats st;
  Capacity cap{n, std::vector<mpq_class>(static_cast<size_t>(n) * n)};
  while (true) {
    st.pivots += lp.solve();
    ++st.rounds;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) cap.at(u, v) = fixed_mult[static_cast<size_t>(u) * n + v];
    for (int e = 0; e < m; ++e) {
      mpq_class x = lp.primal(e);
      cap.at(out.edges[e].u, out.edges[e].v) += x;
      cap.at(out.edges[e].v, out.edges[e].u) += x;
    }
    std::optional<std::vector<CutSet>> found;
    if (n <= 16) found = separate_exhaustive(req, cap, std::max<size_t>(8, n));
    if (!found) found = separate_by_flow(req, cap);
    if (log)
      *log << "lp round " << st.rounds << " cuts " << cuts.size() << " value " << lp.value().get_str()
           << " violated " << found->size() << "\n";
    if (found->empty()) break;
    size_t before = cuts.size();
    for (const auto& w : *found)
      if (std::find(cuts.begin(), cuts.end(), w) == cuts.end()) add_cut(w);
    require(cuts.size() > before, "cut LP separation returned only known cuts");
  }
  st.cuts = static_cast<int>(cuts.size());
  out.x.resize(m);
  mpq_class obj = 0;
  for (int e = 0; e < m; ++e) {
    out.x[e] = lp.primal(e);
    require(sgn(out.x[e]) >= 0 && out.x[e] <= 1, "cut LP solution out of bounds");
    obj += out.x[e] * cost[e];
  }
  require(obj == lp.value(), "cut LP primal and dual values differ");
  out.objective = obj;
  if (stats) *stats = st;
  return out;
}

EdgeSubgraph jain_round(const Instance& inst, const SndRequirements& req, JainTrace* trace,
                        std::ostream* log) {
  EdgeSubgraph f;
  f.n = inst.size();
  JainTrace tr;
  bool first = true;
  const mpq_class half(1, 2);
  while (!satisfies_requirements(req, f)) {
    JainIteration it;
    auto lp = solve_cut_lp(inst, req, f, &it.stats, log);
    it.lp_value = lp.objective;
    if (first) tr.first_lp_value = lp.objective;
    first = false;
    for (size_t e = 0; e < lp.edges.size(); ++e)
      if (lp.x[e] >= half) {
        f.add(lp.edges[e].u, lp.edges[e].v);
        ++it.fixed_added;
      }
    if (log) *log << "jain iteration fixed " << it.fixed_added << " total " << f.edge_count() << "\n";
    if (it.fixed_added == 0) throw ContractViolation("rounding stall: no edge with x >= 1/2");
    tr.iterations.push_back(it);
  }
  if (!first) require(mpq_class(f.weight(inst)) <= 2 * tr.first_lp_value, "rounding exceeded twice the LP value");
  if (trace) *trace = std::move(tr);
  return f;
}

}  // namespace smc
