#include "smc/matching.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

namespace smc {

int WeightedGraph::add_edge(int u, int v, Weight w) {
  if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) throw PreconditionError("bad edge endpoints");
  edges_.push_back({u, v, w});
  return static_cast<int>(edges_.size()) - 1;
}

Weight matching_weight(const WeightedGraph& g, const Matching& m) {
  Weight s = 0;
  for (int id : m.edge_ids) s += g.edge(id).w;
  return s;
}

std::vector<int> mates(const WeightedGraph& g, const Matching& m) {
  std::vector<int> mate(g.vertex_count(), -1);
  for (int id : m.edge_ids) {
    const Edge& e = g.edge(id);
    mate[e.u] = e.v;
    mate[e.v] = e.u;
  }
  return mate;
}

namespace {

// Weighted general matching by the primal-dual blossom method. Follows the
// well-known O(n^3) formulation with integer duals: slack(k) = y_i + y_j - 2 w_k.
class BlossomMatcher {
 public:
  BlossomMatcher(const WeightedGraph& g, bool maxcard) : g_(g), maxcard_(maxcard) {
    nvertex_ = g.vertex_count();
    nedge_ = g.edge_count();
    Weight maxw = 0;
    for (const auto& e : g.edges()) maxw = std::max(maxw, e.w);
    endpoint_.resize(2 * nedge_);
    for (int p = 0; p < 2 * nedge_; ++p) {
      const Edge& e = g.edge(p / 2);
      endpoint_[p] = (p % 2 == 0) ? e.u : e.v;
    }
    neighbend_.assign(nvertex_, {});
    for (int k = 0; k < nedge_; ++k) {
      const Edge& e = g.edge(k);
      neighbend_[e.u].push_back(2 * k + 1);
      neighbend_[e.v].push_back(2 * k);
    }
    const int nb = 2 * nvertex_;
    mate_.assign(nvertex_, -1);
    label_.assign(nb, 0);
    labelend_.assign(nb, -1);
    inblossom_.resize(nvertex_);
    std::iota(inblossom_.begin(), inblossom_.end(), 0);
    blossomparent_.assign(nb, -1);
    blossomchilds_.assign(nb, {});
    blossombase_.assign(nb, -1);
    for (int v = 0; v < nvertex_; ++v) blossombase_[v] = v;
    blossomendps_.assign(nb, {});
    bestedge_.assign(nb, -1);
    blossombestedges_.assign(nb, {});
    has_bbe_.assign(nb, 0);
    for (int b = nvertex_; b < nb; ++b) unusedblossoms_.push_back(b);
    dualvar_.assign(nb, 0);
    for (int v = 0; v < nvertex_; ++v) dualvar_[v] = maxw;
    allowedge_.assign(nedge_, 0);
  }

  std::vector<int> run() {
    if (nedge_ == 0) return std::vector<int>(nvertex_, -1);
    for (int t = 0; t < nvertex_; ++t) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (int b = nvertex_; b < 2 * nvertex_; ++b) {
        blossombestedges_[b].clear();
        has_bbe_[b] = 0;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), 0);
      queue_.clear();
      for (int v = 0; v < nvertex_; ++v)
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);

      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          int v = queue_.back();
          queue_.pop_back();
          require(label_[inblossom_[v]] == 1, "blossom: queued vertex not S");
          for (int p : neighbend_[v]) {
            int k = p / 2;
            int w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;
            Weight kslack = 0;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge_[k] = 1;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              int b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
            }
          }
        }
        if (augmented) break;

        int deltatype = -1;
        Weight delta = 0;
        int deltaedge = -1, deltablossom = -1;
        if (!maxcard_) {
          deltatype = 1;
          delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + nvertex_);
        }
        for (int v = 0; v < nvertex_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            Weight d = slack(bestedge_[v]);
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (int b = 0; b < 2 * nvertex_; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
            Weight ks = slack(bestedge_[b]);
            require(ks % 2 == 0, "blossom: odd slack between S-blossoms");
            Weight d = ks / 2;
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (int b = nvertex_; b < 2 * nvertex_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
              (deltatype == -1 || dualvar_[b] < delta)) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }
        if (deltatype == -1) {
          deltatype = 1;
          delta = std::max<Weight>(0, *std::min_element(dualvar_.begin(), dualvar_.begin() + nvertex_));
        }

        for (int v = 0; v < nvertex_; ++v) {
          if (label_[inblossom_[v]] == 1) dualvar_[v] -= delta;
          else if (label_[inblossom_[v]] == 2) dualvar_[v] += delta;
        }
        for (int b = nvertex_; b < 2 * nvertex_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1) dualvar_[b] += delta;
            else if (label_[b] == 2) dualvar_[b] -= delta;
          }
        }

        if (deltatype == 1) {
          break;
        } else if (deltatype == 2) {
          allowedge_[deltaedge] = 1;
          int i = g_.edge(deltaedge).u, j = g_.edge(deltaedge).v;
          if (label_[inblossom_[i]] == 0) std::swap(i, j);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = 1;
          queue_.push_back(g_.edge(deltaedge).u);
        } else {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) break;
      for (int b = nvertex_; b < 2 * nvertex_; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0)
          expand_blossom(b, true);
      }
    }
    std::vector<int> out(nvertex_, -1);
    for (int v = 0; v < nvertex_; ++v)
      if (mate_[v] >= 0) out[v] = mate_[v] / 2;  // edge id
    return out;
  }

 private:
  Weight slack(int k) const {
    const Edge& e = g_.edge(k);
    return dualvar_[e.u] + dualvar_[e.v] - 2 * e.w;
  }

  void leaves(int b, std::vector<int>& out) const {
    if (b < nvertex_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[b]) leaves(t, out);
  }

  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  static int wrap(int j, int len) { return ((j % len) + len) % len; }

  void assign_label(int w, int t, int p) {
    int b = inblossom_[w];
    require(label_[w] == 0 && label_[b] == 0, "blossom: relabel");
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      leaves(b, queue_);
    } else if (t == 2) {
      int base = blossombase_[b];
      require(mate_[base] >= 0, "blossom: T-blossom base unmatched");
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      path.push_back(b);
      label_[b] = 5;
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = g_.edge(k).u, w = g_.edge(k).v;
    int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    int b = unusedblossoms_.back();
    unusedblossoms_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    auto& path = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;
    for (int lv : leaves(b)) {
      if (label_[inblossom_[lv]] == 2) queue_.push_back(lv);
      inblossom_[lv] = b;
    }
    std::vector<int> bestedgeto(2 * nvertex_, -1);
    for (int sub : path) {
      std::vector<std::vector<int>> nblists;
      if (!has_bbe_[sub]) {
        for (int lv : leaves(sub)) {
          std::vector<int> lst;
          for (int p : neighbend_[lv]) lst.push_back(p / 2);
          nblists.push_back(std::move(lst));
        }
      } else {
        nblists.push_back(blossombestedges_[sub]);
      }
      for (const auto& nblist : nblists) {
        for (int kk : nblist) {
          int i = g_.edge(kk).u, j = g_.edge(kk).v;
          if (inblossom_[j] == b) std::swap(i, j);
          int bj = inblossom_[j];
          if (bj != b && label_[bj] == 1 &&
              (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj])))
            bestedgeto[bj] = kk;
        }
      }
      blossombestedges_[sub].clear();
      has_bbe_[sub] = 0;
      bestedge_[sub] = -1;
    }
    blossombestedges_[b].clear();
    for (int kk : bestedgeto)
      if (kk != -1) blossombestedges_[b].push_back(kk);
    has_bbe_[b] = 1;
    bestedge_[b] = -1;
    for (int kk : blossombestedges_[b])
      if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
  }

  void expand_blossom(int b, bool endstage) {
    std::vector<int> childs = blossomchilds_[b];
    for (int s : childs) {
      blossomparent_[s] = -1;
      if (s < nvertex_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (int lv : leaves(s)) inblossom_[lv] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      const auto& ch = blossomchilds_[b];
      const auto& ep = blossomendps_[b];
      const int len = static_cast<int>(ch.size());
      int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
      int jstep, endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[ep[wrap(j - endptrick, len)] ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[ep[wrap(j - endptrick, len)] / 2] = 1;
        j += jstep;
        p = ep[wrap(j - endptrick, len)] ^ endptrick;
        allowedge_[p / 2] = 1;
        j += jstep;
      }
      int bv = ch[wrap(j, len)];
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (ch[wrap(j, len)] != entrychild) {
        bv = ch[wrap(j, len)];
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        int found = -1;
        for (int lv : leaves(bv))
          if (label_[lv] != 0) {
            found = lv;
            break;
          }
        if (found != -1) {
          label_[found] = 0;
          label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
          assign_label(found, 2, labelend_[found]);
        }
        j += jstep;
      }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    has_bbe_[b] = 0;
    bestedge_[b] = -1;
    unusedblossoms_.push_back(b);
  }

  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= nvertex_) augment_blossom(t, v);
    auto& ch = blossomchilds_[b];
    auto& ep = blossomendps_[b];
    const int len = static_cast<int>(ch.size());
    int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
    int j = i;
    int jstep, endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = ch[wrap(j, len)];
      int p = ep[wrap(j - endptrick, len)] ^ endptrick;
      if (t >= nvertex_) augment_blossom(t, endpoint_[p]);
      j += jstep;
      t = ch[wrap(j, len)];
      if (t >= nvertex_) augment_blossom(t, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(ch.begin(), ch.begin() + i, ch.end());
    std::rotate(ep.begin(), ep.begin() + i, ep.end());
    blossombase_[b] = blossombase_[ch[0]];
    require(blossombase_[b] == v, "blossom: bad base after augment");
  }

  void augment_matching(int k) {
    int v = g_.edge(k).u, w = g_.edge(k).v;
    const std::pair<int, int> starts[2] = {{v, 2 * k + 1}, {w, 2 * k}};
    for (auto [s, p] : starts) {
      while (true) {
        int bs = inblossom_[s];
        if (bs >= nvertex_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        int t = endpoint_[labelend_[bs]];
        int bt = inblossom_[t];
        s = endpoint_[labelend_[bt]];
        int j = endpoint_[labelend_[bt] ^ 1];
        if (bt >= nvertex_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  const WeightedGraph& g_;
  bool maxcard_;
  int nvertex_ = 0, nedge_ = 0;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_, label_, labelend_, inblossom_, blossomparent_, blossombase_;
  std::vector<std::vector<int>> blossomchilds_, blossomendps_, blossombestedges_;
  std::vector<char> has_bbe_;
  std::vector<int> bestedge_, unusedblossoms_;
  std::vector<Weight> dualvar_;
  std::vector<char> allowedge_;
  std::vector<int> queue_;
};

Matching from_edge_mates(const std::vector<int>& edge_of) {
  Matching m;
  for (int id : edge_of)
    if (id >= 0) m.edge_ids.push_back(id);
  std::sort(m.edge_ids.begin(), m.edge_ids.end());
  m.edge_ids.erase(std::unique(m.edge_ids.begin(), m.edge_ids.end()), m.edge_ids.end());
  return m;
}

}  // namespace

Matching max_weight_matching(const WeightedGraph& g, bool max_cardinality) {
  BlossomMatcher bm(g, max_cardinality);
  return from_edge_mates(bm.run());
}

std::optional<Matching> min_weight_perfect_matching(const WeightedGraph& g) {
  const int n = g.vertex_count();
  if (n % 2) return std::nullopt;
  if (n == 0) return Matching{};
  Weight maxw = 0;
  for (const auto& e : g.edges()) maxw = std::max(maxw, e.w);
  WeightedGraph flipped(n);
  for (const auto& e : g.edges()) flipped.add_edge(e.u, e.v, maxw + 1 - e.w);
  Matching m = max_weight_matching(flipped, true);
  if (2 * m.size() != n) return std::nullopt;
  return m;
}

namespace {

// Edmonds' cardinality matching with explicit blossom bases.
class CardinalityMatcher {
 public:
  explicit CardinalityMatcher(const WeightedGraph& g) : g_(g), n_(g.vertex_count()) {
    adj_.assign(n_, {});
    for (int id = 0; id < g.edge_count(); ++id) {
      adj_[g.edge(id).u].push_back({g.edge(id).v, id});
      adj_[g.edge(id).v].push_back({g.edge(id).u, id});
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
    match_.assign(n_, -1);
    match_edge_.assign(n_, -1);
  }

  Matching run() {
    for (int v = 0; v < n_; ++v)
      if (match_[v] == -1) augment_from(v);
    Matching m;
    for (int v = 0; v < n_; ++v)
      if (match_[v] > v) m.edge_ids.push_back(match_edge_[v]);
    std::sort(m.edge_ids.begin(), m.edge_ids.end());
    return m;
  }

 private:
  int lca(int a, int b) {
    std::vector<char> used(n_, 0);
    while (true) {
      a = base_[a];
      used[a] = 1;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    while (true) {
      b = base_[b];
      if (used[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      blossom_[base_[v]] = blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  void augment_from(int root) {
    used_.assign(n_, 0);
    parent_.assign(n_, -1);
    parent_edge_.assign(n_, -1);
    base_.resize(n_);
    std::iota(base_.begin(), base_.end(), 0);
    std::vector<int> q{root};
    used_[root] = 1;
    for (size_t qh = 0; qh < q.size(); ++qh) {
      int v = q[qh];
      for (auto [to, id] : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          int cur = lca(v, to);
          blossom_.assign(n_, 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n_; ++i) {
            if (blossom_[base_[i]]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = 1;
                q.push_back(i);
              }
            }
          }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) {
            flip(to);
            return;
          }
          used_[match_[to]] = 1;
          q.push_back(match_[to]);
        }
      }
    }
  }

  void flip(int v) {
    while (v != -1) {
      int pv = parent_[v];
      int ppv = match_[pv];
      set_match(v, pv);
      v = ppv;
    }
  }

  void set_match(int a, int b) {
    int id = -1;
    for (auto [to, eid] : adj_[a])
      if (to == b) {
        id = eid;
        break;
      }
    match_[a] = b;
    match_[b] = a;
    match_edge_[a] = match_edge_[b] = id;
  }

  const WeightedGraph& g_;
  int n_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::vector<int> match_, match_edge_, parent_, parent_edge_, base_;
  std::vector<char> used_, blossom_;
};

}  // namespace

Matching max_cardinality_matching(const WeightedGraph& g) {
  CardinalityMatcher cm(g);
  return cm.run();
}

std::optional<std::vector<int>> min_cost_assignment(const CostMatrix& cost) {
  const int n = static_cast<int>(cost.size());
  if (n == 0) return std::vector<int>{};
  Weight maxabs = 0;
  for (const auto& row : cost) {
    if (static_cast<int>(row.size()) != n) throw PreconditionError("assignment matrix must be square");
    for (const auto& c : row)
      if (c) maxabs = std::max(maxabs, *c < 0 ? -*c : *c);
  }
  // Forbidden entries get a cost that no perfect assignment of allowed
  // entries can reach, so their presence in the optimum signals infeasibility.
  const Weight big = 2 * (maxabs + 1) * (n + 1);
  auto c = [&](int i, int j) -> Weight { return cost[i][j] ? *cost[i][j] : big; };

  // Shortest augmenting path Hungarian method, 1-based potentials.
  const Weight inf = std::numeric_limits<Weight>::max() / 4;
  std::vector<Weight> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<Weight> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = 0;
      Weight delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        Weight cur = c(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i)
    if (!cost[i][row_to_col[i]]) return std::nullopt;
  return row_to_col;
}

std::vector<int> minimal_edge_cover(const WeightedGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> first_edge(n, -1);
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    if (first_edge[e.u] == -1) first_edge[e.u] = id;
    if (first_edge[e.v] == -1) first_edge[e.v] = id;
  }
  for (int v = 0; v < n; ++v)
    if (first_edge[v] == -1) throw PreconditionError("edge cover: isolated vertex");

  Matching m = max_cardinality_matching(g);
  std::vector<int> cover = m.edge_ids;
  auto mate = mates(g, m);
  for (int v = 0; v < n; ++v)
    if (mate[v] == -1) cover.push_back(first_edge[v]);
  std::sort(cover.begin(), cover.end());
  cover.erase(std::unique(cover.begin(), cover.end()), cover.end());

  // Drop edges whose endpoints are both covered twice over.
  std::vector<int> deg(n, 0);
  for (int id : cover) {
    ++deg[g.edge(id).u];
    ++deg[g.edge(id).v];
  }
  std::vector<int> out;
  for (int id : cover) {
    const Edge& e = g.edge(id);
    if (deg[e.u] > 1 && deg[e.v] > 1) {
      --deg[e.u];
      --deg[e.v];
    } else {
      out.push_back(id);
    }
  }
  return out;
}

}  // namespace smc
