#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "smc/types.hpp"

namespace smc {

struct RatioRow {
  std::string instance;
  int n = 0;
  std::vector<int> groups;
  std::string algorithm;
  Rational cost;
  std::optional<Rational> oracle;
  Rational bound;
  std::optional<int> iterations;  // asym-log only
  long wall_ms = 0;

  std::optional<Rational> ratio() const;
  // Empty without an oracle cost.
  std::string verdict() const;
};

struct RatioReport {
  std::vector<RatioRow> rows;
};

// Column order is fixed:
// instance,n,groups,algorithm,cost,oracle,ratio,bound,pass,iterations,wall_ms
void write_ratio_csv(std::ostream& out, const RatioReport& r);

// Per algorithm: rows, rows with an oracle, passes, mean and max ratio.
// The mean is informational only.
void write_ratio_summary(std::ostream& out, const RatioReport& r);

// "3;6"
std::string join_sizes(const std::vector<int>& sizes);
std::vector<int> split_sizes(const std::string& s);

}  // namespace smc
