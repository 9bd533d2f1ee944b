#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smc/instance.hpp"

namespace smc {

enum class InstanceKind { euclidean, one_two, asymmetric };

InstanceKind parse_instance_kind(const std::string& s);
const char* to_string(InstanceKind k);

struct GeneratorOptions {
  int coord_max = 100;     // euclidean: grid side
  int max_arc = 100;       // asymmetric: raw arc weights in [1, max_arc]
  double one_density = 0.5;  // one-two: probability of a weight-1 edge
};

// Deterministic for a given (kind, n, sizes, seed, options).
// Group sizes must sum to n and each be at least two; vertices are assigned
// to groups by a seeded shuffle.
Instance generate_instance(InstanceKind kind, int n, const std::vector<int>& group_sizes,
                           std::uint64_t seed, const GeneratorOptions& opts = {});

// "3,6" -> {3, 6}
std::vector<int> parse_group_sizes(const std::string& s);

// Random split of n into parts of size >= 2 (at least one part).
std::vector<int> random_group_sizes(int n, std::uint64_t seed, int max_groups = 0);

}  // namespace smc
