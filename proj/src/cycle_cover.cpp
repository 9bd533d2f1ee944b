#include "smc/cycle_cover.hpp"

#include <algorithm>

namespace smc {

const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::bad_vertex: return "bad-vertex";
    case ViolationKind::uncovered_vertex: return "uncovered-vertex";
    case ViolationKind::repeated_vertex: return "repeated-vertex";
    case ViolationKind::short_cycle: return "short-cycle";
    case ViolationKind::illegal_two_cycle: return "illegal-two-cycle";
    case ViolationKind::split_group: return "split-group";
  }
  return "?";
}

std::string FeasibilityReport::summary() const {
  if (ok()) return "feasible";
  std::string s;
  for (auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += to_string(v.kind);
    if (!v.detail.empty()) s += " " + v.detail;
  }
  return s;
}

FeasibilityReport check_two_factor(const Instance& inst, const CycleCover& cover) {
  FeasibilityReport rep;
  const int n = inst.size();
  std::vector<int> seen(n, 0);
  for (size_t ci = 0; ci < cover.cycles.size(); ++ci) {
    const Cycle& c = cover.cycles[ci];
    for (int v : c.vertices) {
      if (v < 0 || v >= n) {
        rep.violations.push_back({ViolationKind::bad_vertex, std::to_string(v)});
        continue;
      }
      if (seen[v]++) rep.violations.push_back({ViolationKind::repeated_vertex, std::to_string(v)});
    }
    const std::string where = "cycle " + std::to_string(ci);
    if (c.size() < 2) {
      rep.violations.push_back({ViolationKind::short_cycle, where});
    } else if (c.size() == 2 && !cover.directed) {
      int a = c.vertices[0], b = c.vertices[1];
      bool in_range = a >= 0 && a < n && b >= 0 && b < n;
      if (!c.pair || !in_range || !inst.is_pair(a, b))
        rep.violations.push_back({ViolationKind::illegal_two_cycle, where});
    } else if (c.pair) {
      rep.violations.push_back({ViolationKind::illegal_two_cycle, where});
    }
  }
  for (int v = 0; v < n; ++v)
    if (!seen[v]) rep.violations.push_back({ViolationKind::uncovered_vertex, std::to_string(v)});
  return rep;
}

FeasibilityReport validate_solution(const Instance& inst, const CycleCover& cover) {
  FeasibilityReport rep = check_two_factor(inst, cover);
  if (!rep.ok()) return rep;
  auto idx = cycle_index(inst.size(), cover);
  for (int g = 0; g < inst.group_count(); ++g) {
    const auto& grp = inst.groups()[g];
    for (int v : grp)
      if (idx[v] != idx[grp[0]]) {
        rep.violations.push_back({ViolationKind::split_group, "group " + std::to_string(g)});
        break;
      }
  }
  return rep;
}

bool respects_groups(const Instance& inst, const CycleCover& cover) {
  auto idx = cycle_index(inst.size(), cover);
  for (const auto& grp : inst.groups())
    for (int v : grp)
      if (idx[v] != idx[grp[0]]) return false;
  return true;
}

std::vector<std::pair<int, int>> cycle_edges(const Cycle& c) {
  std::vector<std::pair<int, int>> out;
  const int k = c.size();
  out.reserve(k);
  for (int i = 0; i < k; ++i) out.emplace_back(c.vertices[i], c.vertices[(i + 1) % k]);
  return out;
}

Weight cycle_cost(const Instance& inst, const Cycle& c) {
  Weight s = 0;
  for (auto [u, v] : cycle_edges(c)) s += inst.w(u, v);
  return s;
}

Weight cover_cost(const Instance& inst, const CycleCover& cover) {
  auto rep = check_two_factor(inst, cover);
  if (!rep.ok()) throw PreconditionError("invalid cover: " + rep.summary());
  Weight s = 0;
  for (const auto& c : cover.cycles) s += cycle_cost(inst, c);
  return s;
}

Rational cover_cost_exact(const Instance& inst, const CycleCover& cover) {
  return inst.to_rational(cover_cost(inst, cover));
}

int count_heavy_edges(const Instance& inst, const CycleCover& cover) {
  int cnt = 0;
  for (const auto& c : cover.cycles)
    for (auto [u, v] : cycle_edges(c))
      if (inst.w(u, v) == 2 * inst.scale()) ++cnt;
  return cnt;
}

std::vector<int> cycle_index(int n, const CycleCover& cover) {
  std::vector<int> idx(n, -1);
  for (size_t i = 0; i < cover.cycles.size(); ++i)
    for (int v : cover.cycles[i].vertices)
      if (v >= 0 && v < n) idx[v] = static_cast<int>(i);
  return idx;
}

CycleCover canonical(const CycleCover& cover) {
  CycleCover out = cover;
  for (auto& c : out.cycles) {
    auto& vs = c.vertices;
    if (vs.empty()) continue;
    std::rotate(vs.begin(), std::min_element(vs.begin(), vs.end()), vs.end());
    if (!cover.directed && vs.size() > 2 && vs.back() < vs[1]) std::reverse(vs.begin() + 1, vs.end());
  }
  std::sort(out.cycles.begin(), out.cycles.end(),
            [](const Cycle& a, const Cycle& b) { return a.vertices < b.vertices; });
  return out;
}

std::vector<bool> disrespecting_cycles(const Instance& inst, const CycleCover& cover) {
  const auto idx = cycle_index(inst.size(), cover);
  std::vector<bool> out(cover.cycles.size(), false);
  for (const auto& g : inst.groups()) {
    bool split = false;
    for (int v : g) split = split || idx[v] != idx[g[0]];
    if (split)
      for (int v : g) out[idx[v]] = true;
  }
  return out;
}

}  // namespace smc
