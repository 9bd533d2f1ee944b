#pragma once

#include <string>
#include <vector>

#include "smc/types.hpp"

namespace smc {

enum class WeightClass { general_metric, one_two, asymmetric_metric };

const char* to_string(WeightClass c);

// Unvalidated instance data as read from a file or built by hand.
struct RawInstance {
  int n = 0;
  bool symmetric = true;
  WeightClass weight_class = WeightClass::general_metric;
  std::vector<std::vector<int>> groups;
  std::vector<std::vector<Rational>> weights;  // n x n, diagonal ignored
};

enum class InstanceErrorKind {
  bad_size,
  bad_vertex,
  partition_overlap,
  partition_incomplete,
  unit_group,
  negative_weight,
  asymmetric_weights,
  triangle_violation,
  weight_class_violation,
  overflow,
};

const char* to_string(InstanceErrorKind k);

class InstanceError : public Error {
 public:
  InstanceError(InstanceErrorKind kind, const std::string& detail);
  InstanceErrorKind kind() const noexcept { return kind_; }

 private:
  InstanceErrorKind kind_;
};

// A validated, immutable instance. Groups partition the vertex set, every
// group has at least two vertices and the weights satisfy the class rules.
class Instance {
 public:
  int size() const noexcept { return n_; }
  bool symmetric() const noexcept { return raw_.symmetric; }
  WeightClass weight_class() const noexcept { return raw_.weight_class; }
  const std::vector<std::vector<int>>& groups() const noexcept { return raw_.groups; }
  int group_count() const noexcept { return static_cast<int>(raw_.groups.size()); }
  int group_of(int v) const { return group_of_[v]; }

  Weight w(int u, int v) const { return scaled_[static_cast<size_t>(u) * n_ + v]; }
  const Rational& weight(int u, int v) const { return raw_.weights[u][v]; }
  std::int64_t scale() const noexcept { return scale_; }
  Rational to_rational(Weight scaled) const { return Rational(scaled, scale_); }

  // True when {u, v} is a terminal group of size two.
  bool is_pair(int u, int v) const;
  bool has_pair_groups() const noexcept { return has_pairs_; }

  const RawInstance& raw() const noexcept { return raw_; }

 private:
  friend Instance validate_instance(RawInstance raw);

  RawInstance raw_;
  int n_ = 0;
  std::int64_t scale_ = 1;
  std::vector<Weight> scaled_;
  std::vector<int> group_of_;
  bool has_pairs_ = false;
};

// Throws InstanceError describing the first rule that fails.
Instance validate_instance(RawInstance raw);

// Convenience for tests and generators: integer weight matrix.
Instance make_instance(const std::vector<std::vector<std::int64_t>>& w,
                       std::vector<std::vector<int>> groups, WeightClass cls,
                       bool symmetric = true);

}  // namespace smc
