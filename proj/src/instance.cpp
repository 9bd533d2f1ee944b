#include "smc/instance.hpp"

#include <algorithm>
#include <numeric>

namespace smc {

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

const char* to_string(WeightClass c) {
  switch (c) {
    case WeightClass::general_metric: return "metric";
    case WeightClass::one_two: return "onetwo";
    case WeightClass::asymmetric_metric: return "asymmetric";
  }
  return "?";
}

const char* to_string(InstanceErrorKind k) {
  switch (k) {
    case InstanceErrorKind::bad_size: return "bad-size";
    case InstanceErrorKind::bad_vertex: return "bad-vertex";
    case InstanceErrorKind::partition_overlap: return "partition-overlap";
    case InstanceErrorKind::partition_incomplete: return "partition-incomplete";
    case InstanceErrorKind::unit_group: return "unit-group";
    case InstanceErrorKind::negative_weight: return "negative-weight";
    case InstanceErrorKind::asymmetric_weights: return "asymmetric-weights";
    case InstanceErrorKind::triangle_violation: return "triangle-violation";
    case InstanceErrorKind::weight_class_violation: return "weight-class-violation";
    case InstanceErrorKind::overflow: return "overflow";
  }
  return "?";
}

InstanceError::InstanceError(InstanceErrorKind kind, const std::string& detail)
    : Error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

bool Instance::is_pair(int u, int v) const {
  if (u == v) return false;
  int g = group_of_[u];
  return g == group_of_[v] && raw_.groups[g].size() == 2;
}

namespace {

constexpr std::int64_t kMaxScaled = std::int64_t{1} << 40;

[[noreturn]] void fail(InstanceErrorKind k, const std::string& d) { throw InstanceError(k, d); }

std::string edge_name(int u, int v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

Instance validate_instance(RawInstance raw) {
  const int n = raw.n;
  if (n < 2) fail(InstanceErrorKind::bad_size, "need at least two vertices");
  if (static_cast<int>(raw.weights.size()) != n)
    fail(InstanceErrorKind::bad_size, "weight matrix has wrong row count");
  for (auto& row : raw.weights)
    if (static_cast<int>(row.size()) != n)
      fail(InstanceErrorKind::bad_size, "weight matrix has wrong column count");

  std::vector<int> group_of(n, -1);
  bool has_pairs = false;
  for (size_t g = 0; g < raw.groups.size(); ++g) {
    auto& grp = raw.groups[g];
    std::sort(grp.begin(), grp.end());
    if (grp.size() < 2) fail(InstanceErrorKind::unit_group, "group " + std::to_string(g));
    if (grp.size() == 2) has_pairs = true;
    for (int v : grp) {
      if (v < 0 || v >= n) fail(InstanceErrorKind::bad_vertex, std::to_string(v));
      if (group_of[v] != -1)
        fail(InstanceErrorKind::partition_overlap, "vertex " + std::to_string(v));
      group_of[v] = static_cast<int>(g);
    }
  }
  for (int v = 0; v < n; ++v)
    if (group_of[v] == -1)
      fail(InstanceErrorKind::partition_incomplete, "vertex " + std::to_string(v));

  // Normalise the diagonal so that equality of instances is well defined.
  for (int v = 0; v < n; ++v) raw.weights[v][v] = 0;

  std::int64_t scale = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational& r = raw.weights[i][j];
      if (r < Rational(0)) fail(InstanceErrorKind::negative_weight, edge_name(i, j));
      std::int64_t d = r.denominator();
      std::int64_t g = std::gcd(scale, d);
      if (scale / g > kMaxScaled / d) fail(InstanceErrorKind::overflow, "denominators too large");
      scale = scale / g * d;
    }

  if (raw.symmetric) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (raw.weights[i][j] != raw.weights[j][i])
          fail(InstanceErrorKind::asymmetric_weights, edge_name(i, j));
  }

  switch (raw.weight_class) {
    case WeightClass::one_two:
      if (!raw.symmetric)
        fail(InstanceErrorKind::weight_class_violation, "one-two instances are symmetric");
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j && raw.weights[i][j] != Rational(1) && raw.weights[i][j] != Rational(2))
            fail(InstanceErrorKind::weight_class_violation, edge_name(i, j));
      break;
    case WeightClass::general_metric:
      if (!raw.symmetric)
        fail(InstanceErrorKind::weight_class_violation, "metric instances are symmetric");
      break;
    case WeightClass::asymmetric_metric:
      break;
  }

  Instance inst;
  inst.n_ = n;
  inst.scale_ = scale;
  inst.scaled_.assign(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational& r = raw.weights[i][j];
      std::int64_t f = scale / r.denominator();
      if (r.numerator() != 0 && f > kMaxScaled / r.numerator())
        fail(InstanceErrorKind::overflow, "scaled weight too large");
      inst.scaled_[static_cast<size_t>(i) * n + j] = r.numerator() * f;
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (inst.w(i, j) > inst.w(i, k) + inst.w(k, j))
          fail(InstanceErrorKind::triangle_violation,
               edge_name(i, j) + " via " + std::to_string(k));
      }
    }

  inst.group_of_ = std::move(group_of);
  inst.has_pairs_ = has_pairs;
  inst.raw_ = std::move(raw);
  return inst;
}

Instance make_instance(const std::vector<std::vector<std::int64_t>>& w,
                       std::vector<std::vector<int>> groups, WeightClass cls, bool symmetric) {
  RawInstance raw;
  raw.n = static_cast<int>(w.size());
  raw.symmetric = symmetric;
  raw.weight_class = cls;
  raw.groups = std::move(groups);
  raw.weights.assign(raw.n, std::vector<Rational>(raw.n));
  for (int i = 0; i < raw.n; ++i)
    for (int j = 0; j < raw.n && j < static_cast<int>(w[i].size()); ++j) raw.weights[i][j] = w[i][j];
  return validate_instance(std::move(raw));
}

}  // namespace smc
