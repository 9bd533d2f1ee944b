#pragma once

#include <iosfwd>
#include <string>

#include "smc/cycle_cover.hpp"
#include "smc/instance.hpp"

namespace smc {

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& msg);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Text format:
//   smc 1
//   n <n>
//   mode symmetric|asymmetric
//   class metric|onetwo|asymmetric
//   groups <k>
//   <k lines of vertex ids>
//   <n rows of n rationals "p" or "p/q">
// Lines starting with '#' are ignored.
Instance read_instance(std::istream& in);
void write_instance(std::ostream& out, const Instance& inst);
Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& inst);

// One cycle per line as vertex ids; a trailing "pair" marks a doubled-edge
// two-cycle. The reader is told whether the cover is directed.
CycleCover read_solution(std::istream& in, bool directed);
void write_solution(std::ostream& out, const CycleCover& cover);

// "p" or "p/q" with q > 0; ParseError otherwise.
Rational read_rational(const std::string& s);

}  // namespace smc
