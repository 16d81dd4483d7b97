#pragma once

#include <random>

#include <Eigen/Dense>

#include "rampsvm/dataset.hpp"
#include "rampsvm/problem.hpp"

namespace rampsvm::testing {

inline Dataset make_dataset(std::initializer_list<std::initializer_list<double>> rows,
                            std::initializer_list<double> labels) {
  Dataset d;
  d.features.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) d.features(i, j++) = v;
    ++i;
  }
  d.labels = Eigen::Map<const Eigen::VectorXd>(labels.begin(), static_cast<Eigen::Index>(labels.size()));
  return d;
}

// Features uniform in [-range, range], labels random signs.
inline Dataset random_dataset(std::mt19937_64& rng, Eigen::Index m, Eigen::Index n, double range = 2.0) {
  std::uniform_real_distribution<double> feat(-range, range);
  std::bernoulli_distribution coin(0.5);
  Dataset d;
  d.features.resize(m, n);
  d.labels.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) d.features(i, j) = feat(rng);
    d.labels(i) = coin(rng) ? 1.0 : -1.0;
  }
  return d;
}

// Resamples until B = [A y] has full column rank.
inline ProblemData random_full_rank_problem(std::mt19937_64& rng, Eigen::Index m, Eigen::Index n,
                                            double range = 2.0) {
  while (true) {
    ProblemData p = build_problem(random_dataset(rng, m, n, range));
    if (p.full_column_rank()) return p;
  }
}

inline Eigen::VectorXd random_direction(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(d);
  do {
    for (Eigen::Index i = 0; i < d; ++i) v(i) = normal(rng);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

}  // namespace rampsvm::testing
