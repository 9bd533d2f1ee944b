#pragma once

#include "smc/instance.hpp"

namespace smc::fixtures {

// Nine vertices a1 a2 a3 b1 b2 c1 c2 d1 d2 (ids 0..8), groups {a*} and the
// rest. Weight-one edges: triangles a1a2a3, b1c1d1, b2c2d2 and the
// Hamiltonian cycle a1 b1 b2 a2 c1 c2 a3 d1 d2. Everything else weighs 2.
Instance tight_onetwo();

}  // namespace smc::fixtures
