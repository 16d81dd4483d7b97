#pragma once

#include "rampsvm/certify.hpp"
#include "rampsvm/dataset.hpp"

namespace rampsvm::fixtures {

/// Positives (3,3), (6,-2) and negative (1,1): a KKT point at C = 0.25 that
/// is not P-stationary for any gamma.
Dataset counterexample();
inline constexpr double kCounterexampleC = 0.25;
/// w = (0.5, 0.5), b = -2, u = (0, 1, 0), lambda = (-0.25, 0, -0.25).
PrimalDualPoint counterexample_kkt_point();

/// x = (2), y = +1. With C = 1, (w, b, u, lambda) = (0, 1, 0, 0) is P-stationary.
Dataset single_sample();
PrimalDualPoint single_sample_point();

/// x = 1 (+1), x = -1 (-1). With C = 1, gamma = 2: w = 1, b = 0, u = 0,
/// lambda = (-0.5, -0.5) is P-stationary with objective 0.5.
Dataset symmetric_pair();
PrimalDualPoint symmetric_pair_point();

}  // namespace rampsvm::fixtures
