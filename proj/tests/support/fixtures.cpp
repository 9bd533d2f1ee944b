#include "support/fixtures.hpp"

#include <vector>

namespace smc::fixtures {

Instance tight_onetwo() {
  enum { a1, a2, a3, b1, b2, c1, c2, d1, d2 };
  std::vector<std::vector<std::int64_t>> w(9, std::vector<std::int64_t>(9, 2));
  auto one = [&](int u, int v) { w[u][v] = w[v][u] = 1; };
  one(a1, a2), one(a2, a3), one(a3, a1);
  one(b1, c1), one(c1, d1), one(d1, b1);
  one(b2, c2), one(c2, d2), one(d2, b2);
  const int ham[] = {a1, b1, b2, a2, c1, c2, a3, d1, d2};
  for (int i = 0; i < 9; ++i) one(ham[i], ham[(i + 1) % 9]);
  for (int v = 0; v < 9; ++v) w[v][v] = 0;
  return make_instance(w, {{a1, a2, a3}, {b1, b2, c1, c2, d1, d2}}, WeightClass::one_two);
}

}  // namespace smc::fixtures
