#include "smc/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace smc {

ParseError::ParseError(int line, const std::string& msg)
    : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty, non-comment line split into tokens.
  std::vector<std::string> next(const char* what) {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      std::istringstream ss(line);
      std::vector<std::string> toks;
      std::string t;
      while (ss >> t) toks.push_back(t);
      return toks;
    }
    throw ParseError(lineno_, std::string("unexpected end of input, expected ") + what);
  }

  int line() const { return lineno_; }

 private:
  std::istream& in_;
  int lineno_ = 0;
};

std::int64_t parse_int(const std::string& s, int line) {
  try {
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(line, "not an integer: " + s);
  }
}

Rational parse_rational(const std::string& s, int line) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s, line));
  std::int64_t num = parse_int(s.substr(0, slash), line);
  std::int64_t den = parse_int(s.substr(slash + 1), line);
  if (den <= 0) throw ParseError(line, "bad denominator: " + s);
  return Rational(num, den);
}

void expect_key(const std::vector<std::string>& toks, const char* key, size_t count, int line) {
  if (toks.empty() || toks[0] != key || toks.size() != count)
    throw ParseError(line, std::string("expected '") + key + "'");
}

}  // namespace

Rational read_rational(const std::string& s) { return parse_rational(s, 0); }

Instance read_instance(std::istream& in) {
  LineReader rd(in);
  auto toks = rd.next("header");
  if (toks.size() != 2 || toks[0] != "smc" || toks[1] != "1")
    throw ParseError(rd.line(), "expected header 'smc 1'");

  RawInstance raw;
  toks = rd.next("n");
  expect_key(toks, "n", 2, rd.line());
  raw.n = static_cast<int>(parse_int(toks[1], rd.line()));
  if (raw.n < 2 || raw.n > 4096) throw ParseError(rd.line(), "n out of range");

  toks = rd.next("mode");
  expect_key(toks, "mode", 2, rd.line());
  if (toks[1] == "symmetric") raw.symmetric = true;
  else if (toks[1] == "asymmetric") raw.symmetric = false;
  else throw ParseError(rd.line(), "unknown mode " + toks[1]);

  toks = rd.next("class");
  expect_key(toks, "class", 2, rd.line());
  if (toks[1] == "metric") raw.weight_class = WeightClass::general_metric;
  else if (toks[1] == "onetwo") raw.weight_class = WeightClass::one_two;
  else if (toks[1] == "asymmetric") raw.weight_class = WeightClass::asymmetric_metric;
  else throw ParseError(rd.line(), "unknown class " + toks[1]);

  toks = rd.next("groups");
  expect_key(toks, "groups", 2, rd.line());
  auto k = parse_int(toks[1], rd.line());
  if (k < 1 || k > raw.n) throw ParseError(rd.line(), "group count out of range");
  for (std::int64_t g = 0; g < k; ++g) {
    toks = rd.next("group");
    std::vector<int> grp;
    for (auto& t : toks) grp.push_back(static_cast<int>(parse_int(t, rd.line())));
    raw.groups.push_back(std::move(grp));
  }

  raw.weights.assign(raw.n, std::vector<Rational>(raw.n));
  for (int i = 0; i < raw.n; ++i) {
    toks = rd.next("weight row");
    if (static_cast<int>(toks.size()) != raw.n) throw ParseError(rd.line(), "weight row has wrong length");
    for (int j = 0; j < raw.n; ++j) raw.weights[i][j] = parse_rational(toks[j], rd.line());
  }
  return validate_instance(std::move(raw));
}

void write_instance(std::ostream& out, const Instance& inst) {
  const auto& raw = inst.raw();
  out << "smc 1\n";
  out << "n " << raw.n << "\n";
  out << "mode " << (raw.symmetric ? "symmetric" : "asymmetric") << "\n";
  out << "class " << to_string(raw.weight_class) << "\n";
  out << "groups " << raw.groups.size() << "\n";
  for (const auto& g : raw.groups) {
    for (size_t i = 0; i < g.size(); ++i) out << (i ? " " : "") << g[i];
    out << "\n";
  }
  for (int i = 0; i < raw.n; ++i) {
    for (int j = 0; j < raw.n; ++j) out << (j ? " " : "") << format_rational(raw.weights[i][j]);
    out << "\n";
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_instance(in);
}

void save_instance(const std::string& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_instance(out, inst);
}

CycleCover read_solution(std::istream& in, bool directed) {
  CycleCover cover;
  cover.directed = directed;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    if (toks.empty() || toks[0][0] == '#') continue;
    Cycle c;
    if (toks.back() == "pair") {
      c.pair = true;
      toks.pop_back();
    }
    for (auto& tok : toks) c.vertices.push_back(static_cast<int>(parse_int(tok, lineno)));
    cover.cycles.push_back(std::move(c));
  }
  return cover;
}

void write_solution(std::ostream& out, const CycleCover& cover) {
  for (const auto& c : cover.cycles) {
    for (size_t i = 0; i < c.vertices.size(); ++i) out << (i ? " " : "") << c.vertices[i];
    if (c.pair) out << " pair";
    out << "\n";
  }
}

}  // namespace smc
