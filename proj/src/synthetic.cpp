#include "rampsvm/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "rampsvm/error.hpp"

namespace rampsvm {

namespace {

void validate(const SyntheticSpec& spec) {
  if (spec.n_per_class < 1) throw InvalidInput("gen_synthetic: n_per_class must be at least 1");
  if (spec.dim < 1) throw InvalidInput("gen_synthetic: dim must be at least 1");
  if (!std::isfinite(spec.separation) || spec.separation < 0.0)
    throw InvalidInput("gen_synthetic: separation must be finite and nonnegative");
  if (!(spec.outlier_fraction >= 0.0 && spec.outlier_fraction <= 1.0))
    throw InvalidInput("gen_synthetic: outlier_fraction must lie in [0, 1]");
}

}  // namespace

int outlier_count(const SyntheticSpec& spec) {
  validate(spec);
  const double total = 2.0 * spec.n_per_class;
  // Absorb representation noise before the ceiling (0.55 * 100 is 55.00000000000001).
  const double raw = spec.outlier_fraction * total;
  return static_cast<int>(std::ceil(raw - 1e-9 * total));
}

Dataset gen_synthetic(const SyntheticSpec& spec) {
  const int outliers = outlier_count(spec);
  const int m = 2 * spec.n_per_class;

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  Dataset d;
  d.features.resize(m, spec.dim);
  d.labels.resize(m);
  for (int i = 0; i < m; ++i) {
    const double y = i < spec.n_per_class ? 1.0 : -1.0;
    d.labels(i) = y;
    for (int j = 0; j < spec.dim; ++j) d.features(i, j) = normal(rng);
    d.features(i, 0) += y * spec.separation / 2.0;
  }

  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int k = 0; k < outliers; ++k) {
    const int i = order[static_cast<std::size_t>(k)];
    d.features(i, 0) = -d.labels(i) * 10.0 * spec.separation;
  }
  return d;
}

}  // namespace rampsvm
