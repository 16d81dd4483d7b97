#include "rampsvm/fixtures.hpp"

namespace rampsvm::fixtures {

Dataset counterexample() {
  Dataset d;
  d.features.resize(3, 2);
  d.features << 3, 3,
                6, -2,
                1, 1;
  d.labels.resize(3);
  d.labels << 1, 1, -1;
  return d;
}

PrimalDualPoint counterexample_kkt_point() {
  PrimalDualPoint p;
  p.w = Eigen::Vector2d(0.5, 0.5);
  p.b = -2.0;
  p.u = Eigen::Vector3d(0.0, 1.0, 0.0);
  p.lambda = Eigen::Vector3d(-0.25, 0.0, -0.25);
  return p;
}

Dataset single_sample() {
  Dataset d;
  d.features = Eigen::MatrixXd::Constant(1, 1, 2.0);
  d.labels = Eigen::VectorXd::Ones(1);
  return d;
}

PrimalDualPoint single_sample_point() {
  PrimalDualPoint p;
  p.w = Eigen::VectorXd::Zero(1);
  p.b = 1.0;
  p.u = Eigen::VectorXd::Zero(1);
  p.lambda = Eigen::VectorXd::Zero(1);
  return p;
}

Dataset symmetric_pair() {
  Dataset d;
  d.features.resize(2, 1);
  d.features << 1, -1;
  d.labels.resize(2);
  d.labels << 1, -1;
  return d;
}

PrimalDualPoint symmetric_pair_point() {
  PrimalDualPoint p;
  p.w = Eigen::VectorXd::Ones(1);
  p.b = 0.0;
  p.u = Eigen::VectorXd::Zero(2);
  p.lambda = Eigen::VectorXd::Constant(2, -0.5);
  return p;
}

}  // namespace rampsvm::fixtures
