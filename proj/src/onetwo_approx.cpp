#include "smc/onetwo_approx.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "smc/oracle.hpp"
#include "smc/two_factor.hpp"

namespace smc {

const char* to_string(OneTwoVariant v) {
  return v == OneTwoVariant::ratio_7_6 ? "ratio-7-6" : "ratio-11-9";
}

const char* to_string(ComponentShape s) {
  switch (s) {
    case ComponentShape::isolated: return "isolated";
    case ComponentShape::in_tree: return "in-tree";
    case ComponentShape::path: return "path";
  }
  return "?";
}

namespace {

using Seq = std::vector<int>;
using UEdge = std::pair<int, int>;

UEdge norm(int a, int b) { return a < b ? UEdge{a, b} : UEdge{b, a}; }

int index_in(const Seq& c, int v) {
  return static_cast<int>(std::find(c.begin(), c.end(), v) - c.begin());
}

int at(const Seq& c, int i) {
  const int m = static_cast<int>(c.size());
  return c[((i % m) + m) % m];
}

// All vertices of c starting at c[i], stepping by d (+1 or -1).
Seq walk(const Seq& c, int i, int d) {
  Seq out;
  out.reserve(c.size());
  for (int k = 0; k < static_cast<int>(c.size()); ++k) out.push_back(at(c, i + d * k));
  return out;
}

bool is_one(const Instance& inst, int u, int v) { return inst.w(u, v) == inst.scale(); }
bool is_two(const Instance& inst, int u, int v) { return inst.w(u, v) == 2 * inst.scale(); }

bool cycle_is_pure(const Instance& inst, const Cycle& c) {
  for (auto [a, b] : cycle_edges(c))
    if (!is_one(inst, a, b)) return false;
  return true;
}

SpecialTwoFactor classify(const Instance& inst, CycleCover cover) {
  SpecialTwoFactor f;
  f.cover = std::move(cover);
  for (int i = 0; i < static_cast<int>(f.cover.cycles.size()); ++i) {
    f.pure.push_back(cycle_is_pure(inst, f.cover.cycles[i]));
    if (!f.pure.back() && f.nonpure < 0) f.nonpure = i;
  }
  return f;
}

// Keeps the better (lex: smaller, adversarial: larger) key, first one on ties.
struct Chooser {
  TieBreak tb;
  bool have = false;
  Weight best = 0;
  bool offer(Weight key) {
    if (!have || (tb == TieBreak::lex ? key < best : key > best)) {
      have = true;
      best = key;
      return true;
    }
    return false;
  }
};

// Joins cycle a (removing edge a[i]a[i+1]) with cycle b (removing b[j]b[j+1]).
// With flip, a[i] connects to b[j]; otherwise to b[j+1].
Seq splice(const Seq& a, int i, const Seq& b, int j, bool flip) {
  Seq out = walk(a, i + 1, 1);  // a[i+1] .. a[i]
  Seq pb = flip ? walk(b, j, -1) : walk(b, j + 1, 1);
  out.insert(out.end(), pb.begin(), pb.end());
  return out;
}

}  // namespace

SpecialTwoFactor make_special(const Instance& inst, CycleCover base) {
  require(inst.weight_class() == WeightClass::one_two, "make_special needs a one-two instance");
  auto& cyc = base.cycles;
  // Two nonpure cycles: drop a weight-two edge from each and reconnect.
  for (;;) {
    std::vector<int> np;
    for (int i = 0; i < static_cast<int>(cyc.size()); ++i)
      if (!cycle_is_pure(inst, cyc[i])) np.push_back(i);
    if (np.size() < 2) break;
    const Seq& a = cyc[np[0]].vertices;
    const Seq& b = cyc[np[1]].vertices;
    auto heavy = [&](const Seq& c) {
      for (int i = 0; i < static_cast<int>(c.size()); ++i)
        if (is_two(inst, c[i], at(c, i + 1))) return i;
      throw ContractViolation("nonpure cycle without a weight-two edge");
    };
    const int i = heavy(a), j = heavy(b);
    const Weight keep = inst.w(a[i], at(b, j + 1)) + inst.w(at(a, i + 1), b[j]);
    const Weight flip = inst.w(a[i], b[j]) + inst.w(at(a, i + 1), at(b, j + 1));
    Cycle merged{splice(a, i, b, j, flip < keep), false};
    cyc.erase(cyc.begin() + np[1]);
    cyc[np[0]] = std::move(merged);
  }
  // A weight-one edge yz from an endpoint y of a weight-two edge xy of the
  // nonpure cycle into a pure cycle: remove xy and wz, add yz and xw.
  for (bool changed = true; changed;) {
    changed = false;
    int n_idx = -1;
    for (int i = 0; i < static_cast<int>(cyc.size()); ++i)
      if (!cycle_is_pure(inst, cyc[i])) n_idx = i;
    if (n_idx < 0) break;
    const Seq nc = cyc[n_idx].vertices;
    for (int i = 0; i < static_cast<int>(nc.size()) && !changed; ++i) {
      if (!is_two(inst, nc[i], at(nc, i + 1))) continue;
      for (int side = 0; side < 2 && !changed; ++side) {
        // y is the endpoint touching the pure cycle, x the other one.
        const int y = side == 0 ? at(nc, i + 1) : nc[i];
        for (int p = 0; p < static_cast<int>(cyc.size()) && !changed; ++p) {
          if (p == n_idx || !cycle_is_pure(inst, cyc[p])) continue;
          const Seq& pc = cyc[p].vertices;
          for (int zi = 0; zi < static_cast<int>(pc.size()); ++zi) {
            if (!is_one(inst, y, pc[zi])) continue;
            // Path of N from y to x, then pure cycle from w to z.
            Seq npath = side == 0 ? walk(nc, i + 1, 1) : walk(nc, i, -1);
            const int x = npath.back();
            const int w_next = at(pc, zi + 1), w_prev = at(pc, zi - 1);
            const Seq ppath = inst.w(x, w_next) <= inst.w(x, w_prev) ? walk(pc, zi + 1, 1) : walk(pc, zi - 1, -1);
            npath.insert(npath.end(), ppath.begin(), ppath.end());
            const int lo = std::min(n_idx, p), hi = std::max(n_idx, p);
            cyc.erase(cyc.begin() + hi);
            cyc[lo] = Cycle{std::move(npath), false};
            changed = true;
            break;
          }
        }
      }
    }
  }
  auto f = classify(inst, std::move(base));
  if (auto why = special_violation(inst, f)) throw ContractViolation("special 2-factor: " + *why);
  return f;
}

SpecialTwoFactor special_2factor(const Instance& inst, OneTwoVariant variant) {
  if (inst.weight_class() != WeightClass::one_two)
    throw PreconditionError("special 2-factor needs a one-two instance");
  CycleCover base = variant == OneTwoVariant::ratio_7_6
                        ? min_weight_triangle_free_2factor(inst, inst.has_pair_groups())
                        : min_weight_2factor(inst, inst.has_pair_groups());
  return make_special(inst, std::move(base));
}

std::optional<std::string> special_violation(const Instance& inst, const SpecialTwoFactor& f) {
  const auto& cyc = f.cover.cycles;
  int nonpure = -1, count = 0;
  for (int i = 0; i < static_cast<int>(cyc.size()); ++i) {
    const bool pure = cycle_is_pure(inst, cyc[i]);
    if (i >= static_cast<int>(f.pure.size()) || f.pure[i] != pure) return "purity flags out of date";
    if (!pure) {
      nonpure = i;
      ++count;
    }
  }
  if (count > 1) return std::to_string(count) + " nonpure cycles";
  if (nonpure != f.nonpure) return "nonpure index out of date";
  if (nonpure < 0) return std::nullopt;
  for (auto [x, y] : cycle_edges(cyc[nonpure])) {
    if (!is_two(inst, x, y)) continue;
    for (int end : {x, y})
      for (int p = 0; p < static_cast<int>(cyc.size()); ++p) {
        if (!f.pure[p]) continue;
        for (int z : cyc[p].vertices)
          if (is_one(inst, end, z))
            return "weight-one edge " + std::to_string(end) + "-" + std::to_string(z) +
                   " from a heavy edge into a pure cycle";
      }
  }
  return std::nullopt;
}

AttachmentGraph build_B(const Instance& inst, const SpecialTwoFactor& f) {
  const int n = inst.size();
  const auto dis = disrespecting_cycles(inst, f.cover);
  AttachmentGraph b;
  b.left = n;
  for (int c = 0; c < static_cast<int>(f.cover.cycles.size()); ++c)
    if (f.pure[c] && dis[c]) b.right_cycle.push_back(c);
  b.graph = WeightedGraph(n + static_cast<int>(b.right_cycle.size()));
  const auto idx = cycle_index(n, f.cover);
  for (int v = 0; v < n; ++v)
    for (int j = 0; j < static_cast<int>(b.right_cycle.size()); ++j) {
      const int c = b.right_cycle[j];
      if (idx[v] == c) continue;
      for (int u : f.cover.cycles[c].vertices)
        if (is_one(inst, u, v)) {
          b.graph.add_edge(v, n + j, 1);
          break;
        }
    }
  return b;
}

AttachmentDigraph build_D_and_Dprime(const Instance& inst, const SpecialTwoFactor& f,
                                     const AttachmentGraph& b, const Matching& m) {
  const int k = static_cast<int>(f.cover.cycles.size());
  const auto idx = cycle_index(inst.size(), f.cover);
  AttachmentDigraph d;
  d.out.assign(k, std::nullopt);
  for (int id : m.edge_ids) {
    const Edge& e = b.graph.edge(id);
    const int v = std::min(e.u, e.v), r = std::max(e.u, e.v) - b.left;
    const int c = b.right_cycle[r];
    require(!d.out[c], "cycle matched twice");
    d.out[c] = AttachmentArc{c, idx[v], v};
  }

  // Break each directed cycle at the arc entering its smallest node.
  std::vector<int> parent(k, -1);
  for (int c = 0; c < k; ++c)
    if (d.out[c]) parent[c] = d.out[c]->to;
  std::vector<int> state(k, 0);  // 0 new, 1 on stack, 2 done
  for (int s = 0; s < k; ++s) {
    std::vector<int> stack;
    int c = s;
    while (c >= 0 && state[c] == 0) {
      state[c] = 1;
      stack.push_back(c);
      c = parent[c];
    }
    if (c >= 0 && state[c] == 1) {
      int smallest = c;
      for (int x = parent[c]; x != c; x = parent[x]) smallest = std::min(smallest, x);
      int tail = smallest;
      while (parent[tail] != smallest) tail = parent[tail];
      parent[tail] = -1;
      d.broken.push_back(tail);
    }
    for (int x : stack) state[x] = 2;
  }

  // Peel the in-forest from its deepest leaves.
  std::vector<std::vector<int>> children(k);
  for (int c = 0; c < k; ++c)
    if (parent[c] >= 0) children[parent[c]].push_back(c);
  std::vector<int> depth(k, 0);
  std::function<int(int)> depth_of = [&](int c) { return parent[c] < 0 ? 0 : 1 + depth_of(parent[c]); };
  for (int c = 0; c < k; ++c) depth[c] = depth_of(c);
  // An increase of 2 needs 9 uncharged vertices; a 2-cycle or the nonpure
  // cycle at the end of a path may not supply them, and both may stay
  // isolated since they have no outgoing arc.
  auto path_end = [&](int g) { return f.pure[g] && f.cover.cycles[g].size() > 2; };
  std::vector<bool> alive(k, true);
  std::vector<int> comp_of(k, -1);
  auto live_children = [&](int c) {
    std::vector<int> out;
    for (int x : children[c])
      if (alive[x]) out.push_back(x);
    return out;
  };
  auto emit = [&](ComponentShape s, std::vector<int> nodes) {
    for (int x : nodes) {
      alive[x] = false;
      comp_of[x] = static_cast<int>(d.components.size());
    }
    d.components.push_back({s, std::move(nodes)});
  };
  for (;;) {
    int x = -1;
    for (int c = 0; c < k; ++c)
      if (alive[c] && parent[c] >= 0 && live_children(c).empty() && (x < 0 || depth[c] > depth[x])) x = c;
    if (x < 0) break;
    const int p = parent[x];
    const int g = parent[p];
    auto kids = live_children(p);
    if (g < 0) {
      kids.insert(kids.begin(), p);
      emit(ComponentShape::in_tree, kids);
    } else if (parent[g] < 0 && live_children(g).size() == 1 && kids.size() == 1 && path_end(g)) {
      emit(ComponentShape::path, {x, p, g});
    } else {
      kids.insert(kids.begin(), p);
      emit(ComponentShape::in_tree, kids);
    }
  }
  for (int c = 0; c < k; ++c)
    if (alive[c]) emit(ComponentShape::isolated, {c});

  // A root that lost its arc while breaking a cycle must not stay isolated:
  // hang it back onto its successor.
  for (int r : d.broken) {
    auto& rc = d.components[comp_of[r]];
    if (rc.shape != ComponentShape::isolated) continue;
    const int h = d.out[r]->to;
    auto& hc = d.components[comp_of[h]];
    require(hc.shape == ComponentShape::in_tree, "broken root next to a path");
    if (hc.nodes[0] == h) {
      hc.nodes.push_back(r);
      comp_of[r] = comp_of[h];
      rc.nodes.clear();
    } else {
      hc.nodes.erase(std::find(hc.nodes.begin(), hc.nodes.end(), h));
      if (hc.nodes.size() == 1 && path_end(hc.nodes[0])) {
        const int center = hc.nodes[0];
        hc = {ComponentShape::path, {r, h, center}};
        comp_of[r] = comp_of[h];
        rc.nodes.clear();
      } else {
        if (hc.nodes.size() == 1) hc.shape = ComponentShape::isolated;
        rc = {ComponentShape::in_tree, {h, r}};
        comp_of[h] = comp_of[r];
      }
    }
  }
  d.components.erase(std::remove_if(d.components.begin(), d.components.end(),
                                    [](const DComponent& c) { return c.nodes.empty(); }),
                     d.components.end());
  if (auto why = dprime_violation(f, d)) throw ContractViolation("D': " + *why);
  return d;
}

std::optional<std::string> dprime_violation(const SpecialTwoFactor& f, const AttachmentDigraph& d) {
  const int k = static_cast<int>(f.cover.cycles.size());
  std::vector<int> seen(k, 0);
  auto arc = [&](int a, int b) { return d.out[a] && d.out[a]->to == b; };
  for (const auto& c : d.components) {
    for (int x : c.nodes) ++seen[x];
    switch (c.shape) {
      case ComponentShape::isolated:
        if (c.nodes.size() != 1) return "isolated component with several nodes";
        break;
      case ComponentShape::in_tree:
        if (c.nodes.size() < 2) return "in-tree without leaves";
        for (std::size_t i = 1; i < c.nodes.size(); ++i)
          if (!arc(c.nodes[i], c.nodes[0])) return "in-tree leaf without arc to the root";
        break;
      case ComponentShape::path:
        if (c.nodes.size() != 3 || !arc(c.nodes[0], c.nodes[1]) || !arc(c.nodes[1], c.nodes[2]))
          return "malformed path";
        if (!f.pure[c.nodes[2]] || f.cover.cycles[c.nodes[2]].size() < 3)
          return "path ending at a 2-cycle or the nonpure cycle";
        break;
    }
  }
  for (int c = 0; c < k; ++c) {
    if (seen[c] != 1) return "cycle " + std::to_string(c) + " covered " + std::to_string(seen[c]) + " times";
    if (d.out[c] && (!f.pure[c] || f.cover.cycles[c].pair)) return "arc out of a nonpure or pair cycle";
  }
  for (const auto& c : d.components)
    if (c.shape == ComponentShape::isolated && d.out[c.nodes[0]])
      return "matched cycle " + std::to_string(c.nodes[0]) + " is isolated";
  return std::nullopt;
}

std::vector<Matching> all_maximum_matchings(const AttachmentGraph& b, std::size_t limit) {
  const int target = max_cardinality_matching(b.graph).size();
  const int r = static_cast<int>(b.right_cycle.size());
  std::vector<std::vector<std::pair<int, int>>> adj(r);  // (edge id, left vertex)
  for (int id = 0; id < b.graph.edge_count(); ++id) {
    const Edge& e = b.graph.edge(id);
    adj[std::max(e.u, e.v) - b.left].push_back({id, std::min(e.u, e.v)});
  }
  std::vector<Matching> out;
  std::vector<bool> used(b.left, false);
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int j) {
    if (static_cast<int>(cur.size()) + (r - j) < target) return;
    if (j == r) {
      Matching m;
      m.edge_ids = cur;
      std::sort(m.edge_ids.begin(), m.edge_ids.end());
      out.push_back(std::move(m));
      if (out.size() > limit) throw BudgetExceeded("too many maximum matchings of B");
      return;
    }
    for (auto [id, v] : adj[j]) {
      if (used[v]) continue;
      used[v] = true;
      cur.push_back(id);
      rec(j + 1);
      cur.pop_back();
      used[v] = false;
    }
    rec(j + 1);
  };
  rec(0);
  return out;
}

CycleCover to_cover(const WorkingCover& w) {
  CycleCover c;
  for (std::size_t i = 0; i < w.cycles.size(); ++i) c.cycles.push_back({w.cycles[i], w.pair[i]});
  return c;
}

namespace {

struct MergeContext {
  const Instance& inst;
  TieBreak tb;
  PhaseLog* log;
  std::set<UEdge>& red;

  Weight w(int a, int b) const { return inst.w(a, b); }
  Weight heavy() const { return 2 * inst.scale(); }

  // Records one merge; `added` and `removed` are real edges, `reds` the
  // added edges that count as weight two.
  void record(const std::vector<UEdge>& added, const std::vector<UEdge>& removed,
              const std::vector<UEdge>& reds) {
    Weight real = 0, virt = 0;
    for (auto [a, b] : added) real += w(a, b);
    for (auto [a, b] : removed) real -= w(a, b);
    virt = real;
    for (auto [a, b] : reds) virt += heavy() - w(a, b);
    for (auto [a, b] : reds) red.insert(norm(a, b));
    if (log) {
      log->real_delta += real;
      log->virtual_delta += virt;
      log->ops.push_back(virt);
    }
  }

  std::vector<int> attach_options(const Seq& leaf, int v) const {
    std::vector<int> out;
    for (int u : leaf)
      if (inst.w(u, v) == inst.scale()) out.push_back(u);
    require(!out.empty(), "matched cycle without a weight-one edge to its vertex");
    return out;
  }
};

struct StarLeaf {
  const Seq* cycle;
  int v;  // attachment vertex in the root
};

Seq merge_in_tree(MergeContext& ctx, const Seq& root, std::vector<StarLeaf> leaves) {
  const int m = static_cast<int>(root.size());
  std::vector<bool> is_att(ctx.inst.size(), false);
  for (const auto& l : leaves) is_att[l.v] = true;
  // Start at an attachment vertex whose predecessor is not one, so that no
  // vertex of the root is used by two merges.
  int start = -1;
  for (const auto& l : leaves) {
    const int i = index_in(root, l.v);
    if (!is_att[at(root, i - 1)] && (start < 0 || l.v < start)) start = l.v;
  }
  if (start < 0)
    for (const auto& l : leaves) start = start < 0 ? l.v : std::min(start, l.v);
  const int s = index_in(root, start);
  auto rank = [&](int v) { return ((index_in(root, v) - s) % m + m) % m; };
  std::sort(leaves.begin(), leaves.end(), [&](const StarLeaf& a, const StarLeaf& b) { return rank(a.v) < rank(b.v); });

  std::map<int, Seq> after;
  const int t = static_cast<int>(leaves.size());
  for (int i = 0; i < t;) {
    const int vi = leaves[i].v;
    const int succ = at(root, index_in(root, vi) + 1);
    const Seq& ci = *leaves[i].cycle;
    if (i + 1 < t && leaves[i + 1].v == succ) {
      const Seq& cj = *leaves[i + 1].cycle;
      const int vj = succ;
      Chooser ch{ctx.tb};
      Seq best;
      std::vector<UEdge> add, rem, reds;
      for (int ui : ctx.attach_options(ci, vi))
        for (int di : {1, -1})
          for (int uj : ctx.attach_options(cj, vj))
            for (int dj : {1, -1}) {
              Seq pi = walk(ci, index_in(ci, ui), di);
              Seq pj = walk(cj, index_in(cj, uj), dj);
              const int ui2 = pi.back(), uj2 = pj.back();
              std::vector<UEdge> a{{vi, ui}, {ui2, uj2}, {uj, vj}};
              std::vector<UEdge> r{{vi, vj}, {ui, ui2}, {uj, uj2}};
              Weight key = 0;
              for (auto [x, y] : a) key += ctx.w(x, y);
              if (!ch.offer(key)) continue;
              best = pi;
              best.insert(best.end(), pj.rbegin(), pj.rend());
              add = a;
              rem = r;
              reds = {{ui2, uj2}};
            }
      ctx.record(add, rem, reds);
      after[vi] = best;
      i += 2;
    } else {
      Chooser ch{ctx.tb};
      Seq best;
      std::vector<UEdge> add, rem, reds;
      for (int ui : ctx.attach_options(ci, vi))
        for (int di : {1, -1}) {
          Seq pi = walk(ci, index_in(ci, ui), di);
          const int ui2 = pi.back();
          std::vector<UEdge> a{{vi, ui}, {ui2, succ}};
          Weight key = ctx.w(vi, ui) + ctx.w(ui2, succ);
          if (!ch.offer(key)) continue;
          best = pi;
          add = a;
          rem = {{vi, succ}, {ui, ui2}};
          reds = {{ui2, succ}};
        }
      ctx.record(add, rem, reds);
      after[vi] = best;
      i += 1;
    }
  }
  Seq out;
  for (int k = 0; k < m; ++k) {
    const int v = at(root, s + k);
    out.push_back(v);
    if (auto it = after.find(v); it != after.end()) out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

// Path ci -> cj -> ck: ci attaches at p in cj, cj attaches at q in ck.
Seq merge_path(MergeContext& ctx, const Seq& ci, const Seq& cj, const Seq& ck, int p, int q) {
  Chooser ch{ctx.tb};
  Seq best;
  std::vector<UEdge> add, rem, reds;
  auto offer = [&](Seq seq, std::vector<UEdge> a, std::vector<UEdge> r, std::vector<UEdge> rd) {
    Weight key = 0;
    for (auto [x, y] : a) key += ctx.w(x, y);
    if (!ch.offer(key)) return;
    best = std::move(seq);
    add = std::move(a);
    rem = std::move(r);
    reds = std::move(rd);
  };
  const int mj = static_cast<int>(cj.size());
  for (int ui : ctx.attach_options(ci, p))
    for (int di : {1, -1})
      for (int dk : {1, -1}) {
        const Seq pi = walk(ci, index_in(ci, ui), di);  // ui .. ui2
        const Seq pk = walk(ck, index_in(ck, q), dk);   // q .. q2
        const int ui2 = pi.back(), q2 = pk.back();
        for (int uj : ctx.attach_options(cj, q)) {
          if (uj == p) {
            // p alone between q and ui; cj - p runs from p1 to p2.
            for (int dj : {1, -1}) {
              Seq rest = walk(cj, index_in(cj, p) + dj, dj);
              rest.pop_back();
              const int p1 = rest.front(), p2 = rest.back();
              Seq seq{p};
              seq.insert(seq.end(), pi.begin(), pi.end());
              seq.insert(seq.end(), rest.begin(), rest.end());
              seq.insert(seq.end(), pk.rbegin(), pk.rend());
              offer(seq, {{p, ui}, {ui2, p1}, {p2, q2}, {q, p}}, {{ui, ui2}, {p, p1}, {p, p2}, {q, q2}},
                    {{ui2, p1}, {p2, q2}});
            }
            continue;
          }
          // cj split into A (ending at p) and B (ending at uj) by removing
          // c[t]c[t+1] and c[r]c[r+1], with c[0] = uj and c[s] = p.
          for (int dj : {1, -1}) {
            const Seq c = walk(cj, index_in(cj, uj), dj);
            const int s = index_in(c, p);
            for (int t = 0; t < s; ++t)
              for (int r = s; r < mj; ++r) {
                if (!(t == s - 1 || r == s) || !(t == 0 || r == mj - 1)) continue;
                Seq a_path(c.begin() + t + 1, c.begin() + r + 1);  // c[t+1] .. c[r]
                if (a_path.back() != p) std::reverse(a_path.begin(), a_path.end());
                Seq b_path;
                for (int x = r + 1; x < mj; ++x) b_path.push_back(c[x]);
                for (int x = 0; x <= t; ++x) b_path.push_back(c[x]);
                if (b_path.back() != uj) std::reverse(b_path.begin(), b_path.end());
                const int xa = a_path.front(), xb = b_path.front();
                Seq seq = pk;
                seq.insert(seq.end(), a_path.begin(), a_path.end());
                seq.insert(seq.end(), pi.begin(), pi.end());
                seq.insert(seq.end(), b_path.begin(), b_path.end());
                offer(seq, {{q2, xa}, {p, ui}, {ui2, xb}, {uj, q}},
                      {{q, q2}, {c[t], c[t + 1]}, {c[r], at(c, r + 1)}, {ui, ui2}}, {{q2, xa}, {ui2, xb}});
              }
          }
        }
      }
  ctx.record(add, rem, reds);
  return best;
}

}  // namespace

WorkingCover join_component_cycles(const Instance& inst, const SpecialTwoFactor& f,
                                   const AttachmentDigraph& d, TieBreak tb, PhaseLog* log) {
  WorkingCover out;
  PhaseLog local;
  MergeContext ctx{inst, tb, &local, out.red};
  const auto& cyc = f.cover.cycles;
  for (const auto& comp : d.components) {
    const auto& nodes = comp.nodes;
    switch (comp.shape) {
      case ComponentShape::isolated:
        out.cycles.push_back(cyc[nodes[0]].vertices);
        out.pair.push_back(cyc[nodes[0]].pair);
        break;
      case ComponentShape::in_tree: {
        std::vector<StarLeaf> leaves;
        for (std::size_t i = 1; i < nodes.size(); ++i)
          leaves.push_back({&cyc[nodes[i]].vertices, d.out[nodes[i]]->vertex});
        const std::size_t before = local.ops.size();
        out.cycles.push_back(merge_in_tree(ctx, cyc[nodes[0]].vertices, leaves));
        out.pair.push_back(false);
        for (std::size_t i = before; i < local.ops.size(); ++i)
          require(local.ops[i] <= inst.scale(), "in-tree merge above one");
        break;
      }
      case ComponentShape::path: {
        const int p = d.out[nodes[0]]->vertex, q = d.out[nodes[1]]->vertex;
        out.cycles.push_back(
            merge_path(ctx, cyc[nodes[0]].vertices, cyc[nodes[1]].vertices, cyc[nodes[2]].vertices, p, q));
        out.pair.push_back(false);
        require(local.ops.back() <= 2 * inst.scale(), "path merge above two");
        break;
      }
    }
  }
  if (log) *log = local;
  return out;
}

WorkingCover join_disrespecting_cycles(const Instance& inst, WorkingCover cover, TieBreak tb, PhaseLog* log) {
  const Weight two = 2 * inst.scale();
  auto virt = [&](int a, int b) { return cover.red.count(norm(a, b)) ? two : inst.w(a, b); };
  auto flagged = [&](const Seq& c) {
    for (int i = 0; i < static_cast<int>(c.size()); ++i)
      if (virt(c[i], at(c, i + 1)) == two) return true;
    return false;
  };
  for (;;) {
    const CycleCover cc = to_cover(cover);
    const auto idx = cycle_index(inst.size(), cc);
    std::set<std::pair<int, int>> pairs;
    for (const auto& g : inst.groups()) {
      std::set<int> cs;
      for (int v : g) cs.insert(idx[v]);
      for (int a : cs)
        for (int b : cs)
          if (a < b) pairs.insert({a, b});
    }
    if (pairs.empty()) break;
    int ba = -1, bb = -1, prio = -1;
    for (auto [a, b] : pairs) {
      const int pr = flagged(cover.cycles[a]) + flagged(cover.cycles[b]);
      if (pr > prio) {
        prio = pr;
        ba = a;
        bb = b;
      }
    }
    const Seq& A = cover.cycles[ba];
    const Seq& B = cover.cycles[bb];
    // A flagged cycle gives up one of its weight-two edges.
    auto positions = [&](const Seq& c) {
      std::vector<int> out;
      const bool fl = flagged(c);
      for (int i = 0; i < static_cast<int>(c.size()); ++i)
        if (!fl || virt(c[i], at(c, i + 1)) == two) out.push_back(i);
      return out;
    };
    Chooser ch{tb};
    Seq best;
    UEdge ra, rb;
    Weight best_real = 0;
    for (int i : positions(A))
      for (int j : positions(B))
        for (bool flip : {false, true}) {
          const int a0 = A[i], a1 = at(A, i + 1), b0 = B[j], b1 = at(B, j + 1);
          const Weight added = flip ? inst.w(a0, b0) + inst.w(a1, b1) : inst.w(a0, b1) + inst.w(a1, b0);
          const Weight dv = added - virt(a0, a1) - virt(b0, b1);
          if (!ch.offer(dv)) continue;
          best = splice(A, i, B, j, flip);
          ra = norm(a0, a1);
          rb = norm(b0, b1);
          best_real = added - inst.w(a0, a1) - inst.w(b0, b1);
        }
    if (log) {
      log->virtual_delta += ch.best;
      log->real_delta += best_real;
      log->ops.push_back(ch.best);
    }
    cover.red.erase(ra);
    cover.red.erase(rb);
    cover.cycles[ba] = std::move(best);
    cover.pair[ba] = false;
    cover.cycles.erase(cover.cycles.begin() + bb);
    cover.pair.erase(cover.pair.begin() + bb);
  }
  return cover;
}

namespace {

struct Run {
  OneTwoTrace t;
  Weight cost = 0;
};

Run run_pipeline(const Instance& inst, OneTwoVariant variant, SpecialTwoFactor f, AttachmentGraph b, Matching m,
                 TieBreak tb) {
  Run run;
  auto& t = run.t;
  t.special = std::move(f);
  t.b = std::move(b);
  t.m = std::move(m);
  t.d = build_D_and_Dprime(inst, t.special, t.b, t.m);

  const int n = inst.size();
  const auto& cyc = t.special.cover.cycles;
  t.w_f = cover_cost(inst, t.special.cover);
  t.e2_f = count_heavy_edges(inst, t.special.cover);
  const auto dis = disrespecting_cycles(inst, t.special.cover);
  std::vector<bool> in_cp(n, false);
  for (const auto& c : t.d.components)
    if (c.shape == ComponentShape::isolated && t.special.pure[c.nodes[0]] && dis[c.nodes[0]]) {
      ++t.c_p;
      t.c_p_vertices += cyc[c.nodes[0]].size();
      for (int v : cyc[c.nodes[0]].vertices) in_cp[v] = true;
    }
  std::vector<bool> on_heavy(n, false);
  for (const auto& c : cyc)
    for (auto [a, bb] : cycle_edges(c))
      if (is_two(inst, a, bb)) on_heavy[a] = on_heavy[bb] = true;
  for (int v = 0; v < n; ++v) t.strict_pool += !on_heavy[v] && !in_cp[v];
  t.pool = n - t.e2_f - t.c_p_vertices;

  WorkingCover w1 = join_component_cycles(inst, t.special, t.d, tb, &t.phase1_log);
  t.phase1 = to_cover(w1);
  WorkingCover w2 = join_disrespecting_cycles(inst, std::move(w1), tb, &t.phase2_log);
  t.result = to_cover(w2);

  if (auto rep = validate_solution(inst, t.result); !rep.ok())
    throw ContractViolation("one-two result infeasible: " + rep.summary());
  run.cost = cover_cost(inst, t.result);
  const Weight s = inst.scale();
  require(run.cost <= t.w_f + t.phase1_log.virtual_delta + t.phase2_log.virtual_delta,
          "real cost above the virtual cost");
  require(t.phase2_log.virtual_delta <= t.c_p * s, "second phase above c_p");

  const Weight cost = run.cost / s;  // one-two weights are integral
  if (variant == OneTwoVariant::ratio_7_6) {
    t.phase1_audit = 6 * t.phase1_log.virtual_delta <= t.pool * s;
    t.phase1_strict = 6 * t.phase1_log.virtual_delta <= t.strict_pool * s;
    t.chain_bound = 6 * cost <= 7 * n + 5 * t.e2_f + 2 * t.c_p;
  } else {
    t.phase1_audit = 9 * t.phase1_log.virtual_delta <= 2 * t.pool * s;
    t.phase1_strict = 9 * t.phase1_log.virtual_delta <= 2 * t.strict_pool * s;
    t.chain_bound = 9 * cost <= 11 * n + 7 * t.e2_f + 3 * t.c_p;
  }
  return run;
}

}  // namespace

CycleCover approx_onetwo(const Instance& inst, OneTwoVariant variant, TieBreak tb, OneTwoTrace* trace) {
  if (inst.weight_class() != WeightClass::one_two) throw PreconditionError("approx_onetwo needs a one-two instance");
  if (variant == OneTwoVariant::ratio_7_6)
    for (const auto& g : inst.groups())
      if (g.size() < 4) throw PreconditionError("the 7/6 variant needs every group to have at least 4 vertices");

  if (tb == TieBreak::lex) {
    auto f = special_2factor(inst, variant);
    auto b = build_B(inst, f);
    auto m = max_cardinality_matching(b.graph);
    Run run = run_pipeline(inst, variant, std::move(f), std::move(b), std::move(m), tb);
    if (trace) *trace = std::move(run.t);
    return trace ? trace->result : run.t.result;
  }

  std::vector<CycleCover> bases;
  constexpr int kAdversarialFactorN = 9;
  if (inst.size() <= kAdversarialFactorN) {
    TwoFactorQuery q;
    q.triangle_free = variant == OneTwoVariant::ratio_7_6;
    q.allow_pair_2cycles = inst.has_pair_groups();
    bases = all_min_2factors(inst, q, kAdversarialFactorN);
  } else {
    bases.push_back(special_2factor(inst, variant).cover);
  }
  std::optional<Run> worst;
  long count = 0;
  for (auto& base : bases) {
    auto f = make_special(inst, std::move(base));
    auto b = build_B(inst, f);
    for (auto& m : all_maximum_matchings(b)) {
      Run run = run_pipeline(inst, variant, f, b, m, tb);
      ++count;
      if (!worst || run.cost > worst->cost) worst = std::move(run);
    }
  }
  require(worst.has_value(), "no adversarial run");
  worst->t.candidates = count;
  if (trace) *trace = worst->t;
  return worst->t.result;
}

void write_stages(std::ostream& out, const Instance& inst, const OneTwoTrace& t) {
  auto cycle_line = [&](const Cycle& c) {
    std::ostringstream s;
    for (std::size_t i = 0; i < c.vertices.size(); ++i) s << (i ? " " : "") << c.vertices[i];
    if (c.pair) s << " pair";
    return s.str();
  };
  out << "# F weight " << format_rational(inst.to_rational(t.w_f)) << " e2 " << t.e2_f << "\n";
  for (std::size_t i = 0; i < t.special.cover.cycles.size(); ++i)
    out << "F " << i << (t.special.pure[i] ? " pure : " : " nonpure : ")
        << cycle_line(t.special.cover.cycles[i]) << "\n";
  for (const auto& e : t.b.graph.edges())
    out << "B " << std::min(e.u, e.v) << " C" << t.b.right_cycle[std::max(e.u, e.v) - t.b.left] << "\n";
  for (int id : t.m.edge_ids) {
    const auto& e = t.b.graph.edge(id);
    out << "M " << std::min(e.u, e.v) << " C" << t.b.right_cycle[std::max(e.u, e.v) - t.b.left] << "\n";
  }
  for (const auto& a : t.d.out)
    if (a) out << "D C" << a->from << " -> C" << a->to << " at " << a->vertex << "\n";
  for (const auto& c : t.d.components) {
    out << "D' " << to_string(c.shape);
    for (int x : c.nodes) out << " C" << x;
    out << "\n";
  }
  for (const auto& c : t.phase1.cycles) out << "phase1 " << cycle_line(c) << "\n";
  for (const auto& c : t.result.cycles) out << "phase2 " << cycle_line(c) << "\n";
  out << "# c_p " << t.c_p << " pool " << t.pool << " strict_pool " << t.strict_pool << " phase1 +"
      << t.phase1_log.virtual_delta << " phase2 +" << t.phase2_log.virtual_delta << "\n";
}

}  // namespace smc
