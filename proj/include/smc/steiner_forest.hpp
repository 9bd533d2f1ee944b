#pragma once

#include "smc/snd.hpp"

namespace smc {

// Primal-dual 2-approximation for the forest connecting every group:
// uniform dual growth on active components followed by reverse deletion.
EdgeSubgraph primal_dual_steiner_forest(const Instance& inst);

}  // namespace smc
