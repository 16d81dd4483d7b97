#include "rampsvm/ramp_loss.hpp"

#include <cmath>
#include <string>

#include "rampsvm/dataset.hpp"
#include "rampsvm/error.hpp"

namespace rampsvm {

namespace {

void require_finite(double t, const char* what) {
  if (!std::isfinite(t)) throw InvalidInput(std::string(what) + ": non-finite argument");
}

}  // namespace

double ramp_loss(double t) {
  require_finite(t, "ramp_loss");
  if (t >= 1.0) return 1.0;
  if (t >= 0.0) return t;
  return 0.0;
}

double ramp_loss_sum(const Eigen::Ref<const Eigen::VectorXd>& u) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) sum += ramp_loss(u(i));
  return sum;
}

SubdiffInterval ramp_subdiff(double t) {
  require_finite(t, "ramp_subdiff");
  if (t == 0.0 || t == 1.0) return {0.0, 1.0};
  if (t > 0.0 && t < 1.0) return {1.0, 1.0};
  return {0.0, 0.0};
}

Eigen::VectorXd margin_slack(const Eigen::Ref<const Eigen::VectorXd>& w, double b,
                             const Dataset& data) {
  if (w.size() != data.n())
    throw InvalidInput("weight vector has length " + std::to_string(w.size()) + ", expected " +
                       std::to_string(data.n()));
  Eigen::VectorXd score = data.features * w;
  score.array() += b;
  return (1.0 - data.labels.array() * score.array()).matrix();
}

double objective(const Eigen::Ref<const Eigen::VectorXd>& w, double b, const Dataset& data,
                 double C) {
  if (!(C > 0.0) || !std::isfinite(C)) throw InvalidInput("objective: C must be positive");
  return 0.5 * w.squaredNorm() + C * ramp_loss_sum(margin_slack(w, b, data));
}

}  // namespace rampsvm
