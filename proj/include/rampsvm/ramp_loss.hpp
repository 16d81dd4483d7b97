#pragma once

#include <Eigen/Core>

namespace rampsvm {

struct Dataset;

/// Closed interval [lo, hi] holding a (sub)gradient set.
struct SubdiffInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return lo <= v && v <= hi; }
  bool singleton() const { return lo == hi; }
};

/// Truncated hinge: 1 for t >= 1, t on [0, 1), 0 for t < 0.
/// Breakpoints are compared exactly.
double ramp_loss(double t);

/// Sum of ramp_loss over the entries of u. An empty vector sums to 0.
double ramp_loss_sum(const Eigen::Ref<const Eigen::VectorXd>& u);

/// Subdifferential of the ramp loss: [0,1] at the breakpoints t = 0 and
/// t = 1, {1} on (0,1), {0} elsewhere.
SubdiffInterval ramp_subdiff(double t);

/// Margin slack u = 1 - y_i (<w, x_i> + b) for every sample.
Eigen::VectorXd margin_slack(const Eigen::Ref<const Eigen::VectorXd>& w, double b,
                             const Dataset& data);

/// Ramp-loss SVM objective 0.5 ||w||^2 + C * sum_i ramp(1 - y_i(<w, x_i> + b)).
double objective(const Eigen::Ref<const Eigen::VectorXd>& w, double b, const Dataset& data,
                 double C);

}  // namespace rampsvm
