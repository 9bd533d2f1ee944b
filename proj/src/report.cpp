#include "smc/report.hpp"

#include <map>
#include <ostream>
#include <sstream>

#include <boost/rational.hpp>

namespace smc {

std::optional<Rational> RatioRow::ratio() const {
  if (!oracle) return std::nullopt;
  if (*oracle == Rational(0)) return cost == Rational(0) ? Rational(1) : Rational(0);
  return cost / *oracle;
}

std::string RatioRow::verdict() const {
  auto r = ratio();
  if (!r) return "";
  if (*oracle == Rational(0) && cost != Rational(0)) return "fail";
  return *r <= bound ? "pass" : "fail";
}

std::string join_sizes(const std::vector<int>& sizes) {
  std::string s;
  for (std::size_t i = 0; i < sizes.size(); ++i) s += (i ? ";" : "") + std::to_string(sizes[i]);
  return s;
}

std::vector<int> split_sizes(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ';');) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::logic_error&) {
      throw PreconditionError("bad group size list: " + s);
    }
  }
  return out;
}

void write_ratio_csv(std::ostream& out, const RatioReport& r) {
  out << "instance,n,groups,algorithm,cost,oracle,ratio,bound,pass,iterations,wall_ms\n";
  for (const auto& row : r.rows) {
    auto ratio = row.ratio();
    out << row.instance << ',' << row.n << ',' << join_sizes(row.groups) << ',' << row.algorithm << ','
        << format_rational(row.cost) << ',' << (row.oracle ? format_rational(*row.oracle) : "") << ','
        << (ratio ? format_rational(*ratio) : "") << ',' << format_rational(row.bound) << ','
        << row.verdict() << ',' << (row.iterations ? std::to_string(*row.iterations) : "") << ','
        << row.wall_ms << "\n";
  }
}

void write_ratio_summary(std::ostream& out, const RatioReport& r) {
  struct Acc {
    int rows = 0, with_oracle = 0, passed = 0;
    double sum = 0;
    Rational max{0};
  };
  std::vector<std::string> order;
  std::map<std::string, Acc> acc;
  for (const auto& row : r.rows) {
    if (!acc.count(row.algorithm)) order.push_back(row.algorithm);
    auto& a = acc[row.algorithm];
    ++a.rows;
    if (auto x = row.ratio()) {
      ++a.with_oracle;
      a.passed += row.verdict() == "pass";
      a.sum += boost::rational_cast<double>(*x);
      if (*x > a.max) a.max = *x;
    }
  }
  out << "algorithm,rows,with_oracle,passed,mean_ratio,max_ratio\n";
  for (const auto& name : order) {
    const auto& a = acc[name];
    out << name << ',' << a.rows << ',' << a.with_oracle << ',' << a.passed << ',';
    if (a.with_oracle) {
      std::ostringstream m;
      m.precision(6);
      m << std::fixed << a.sum / a.with_oracle;
      out << m.str() << ',' << format_rational(a.max);
    } else {
      out << ',';
    }
    out << "\n";
  }
}

}  // namespace smc
