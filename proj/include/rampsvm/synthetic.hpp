#pragma once

#include <cstdint>

#include "rampsvm/dataset.hpp"

namespace rampsvm {

struct SyntheticSpec {
  int n_per_class = 10;
  double separation = 4.0;
  double outlier_fraction = 0.0;
  std::uint64_t seed = 0;
  int dim = 2;
};

/// Two unit-variance isotropic Gaussian blobs centred at +-(separation/2) e_1,
/// labels +1 then -1. ceil(outlier_fraction * 2 n_per_class) samples, chosen
/// by a seeded shuffle, have their first coordinate moved to
/// -y_i * 10 * separation (far on the wrong side); labels are kept.
/// Deterministic for a given spec.
Dataset gen_synthetic(const SyntheticSpec& spec);

/// Number of relocated samples gen_synthetic produces for `spec`.
int outlier_count(const SyntheticSpec& spec);

}  // namespace rampsvm
