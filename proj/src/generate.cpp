#include "smc/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace smc {

InstanceKind parse_instance_kind(const std::string& s) {
  if (s == "euclidean" || s == "metric") return InstanceKind::euclidean;
  if (s == "onetwo" || s == "one-two") return InstanceKind::one_two;
  if (s == "asymmetric") return InstanceKind::asymmetric;
  throw PreconditionError("unknown instance kind: " + s);
}

const char* to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::euclidean: return "euclidean";
    case InstanceKind::one_two: return "onetwo";
    case InstanceKind::asymmetric: return "asymmetric";
  }
  return "?";
}

std::vector<int> parse_group_sizes(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw PreconditionError("bad group size list: " + s);
    }
  }
  if (out.empty()) throw PreconditionError("empty group size list");
  return out;
}

std::vector<int> random_group_sizes(int n, std::uint64_t seed, int max_groups) {
  if (n < 2) throw PreconditionError("n must be at least 2");
  std::mt19937_64 rng(seed);
  int k_max = n / 2;
  if (max_groups > 0) k_max = std::min(k_max, max_groups);
  int k = std::uniform_int_distribution<int>(1, k_max)(rng);
  std::vector<int> sizes(k, 2);
  for (int extra = n - 2 * k; extra > 0; --extra)
    ++sizes[std::uniform_int_distribution<int>(0, k - 1)(rng)];
  return sizes;
}

namespace {

std::int64_t ceil_sqrt(std::int64_t x) {
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(x)));
  while (s * s > x) --s;
  while ((s + 1) * (s + 1) <= x) ++s;
  return s * s == x ? s : s + 1;
}

}  // namespace

Instance generate_instance(InstanceKind kind, int n, const std::vector<int>& group_sizes,
                           std::uint64_t seed, const GeneratorOptions& opts) {
  if (n < 2) throw PreconditionError("n must be at least 2");
  if (std::accumulate(group_sizes.begin(), group_sizes.end(), 0) != n)
    throw PreconditionError("group sizes must sum to n");
  for (int s : group_sizes)
    if (s < 2) throw PreconditionError("group sizes must be at least 2");

  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, 0));
  WeightClass cls = WeightClass::general_metric;
  bool symmetric = true;

  switch (kind) {
    case InstanceKind::euclidean: {
      // Ceiling of Euclidean distance keeps the triangle inequality.
      std::uniform_int_distribution<int> coord(0, opts.coord_max);
      std::vector<std::pair<int, int>> pts;
      while (static_cast<int>(pts.size()) < n) {
        std::pair<int, int> p{coord(rng), coord(rng)};
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
      }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          std::int64_t dx = pts[i].first - pts[j].first, dy = pts[i].second - pts[j].second;
          w[i][j] = ceil_sqrt(dx * dx + dy * dy);
        }
      break;
    }
    case InstanceKind::one_two: {
      cls = WeightClass::one_two;
      std::bernoulli_distribution one(opts.one_density);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) w[i][j] = w[j][i] = one(rng) ? 1 : 2;
      break;
    }
    case InstanceKind::asymmetric: {
      cls = WeightClass::asymmetric_metric;
      symmetric = false;
      std::uniform_int_distribution<int> arc(1, opts.max_arc);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w[i][j] = i == j ? 0 : arc(rng);
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) w[i][j] = std::min(w[i][j], w[i][k] + w[k][j]);
      break;
    }
  }

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<int>> groups;
  int pos = 0;
  for (int s : group_sizes) {
    groups.emplace_back(perm.begin() + pos, perm.begin() + pos + s);
    pos += s;
  }
  return make_instance(w, std::move(groups), cls, symmetric);
}

}  // namespace smc
