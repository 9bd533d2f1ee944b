#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace smc {

// Scaled integer weight. Every instance stores its weights multiplied by a
// common denominator so that all algorithms work on exact integers.
using Weight = std::int64_t;
using Rational = boost::rational<std::int64_t>;

enum class TieBreak { lex, adversarial };

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an input violates a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Raised when an oracle or brute-force routine would exceed its budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Raised when an internal invariant or a proved bound fails at runtime.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool cond, const char* what) {
  if (!cond) throw ContractViolation(what);
}

std::string format_rational(const Rational& r);

}  // namespace smc
