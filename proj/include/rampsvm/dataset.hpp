#pragma once

#include <Eigen/Core>

namespace rampsvm {

/// Labeled training samples. Row i of `features` is x_i; `labels(i)` is y_i in {-1, +1}.
struct Dataset {
  Eigen::MatrixXd features;
  Eigen::VectorXd labels;

  Eigen::Index m() const { return features.rows(); }
  Eigen::Index n() const { return features.cols(); }

  /// Throws InvalidInput unless m >= 1, n >= 1, shapes agree, entries are
  /// finite and every label is exactly -1 or +1.
  void validate() const;
};

}  // namespace rampsvm
