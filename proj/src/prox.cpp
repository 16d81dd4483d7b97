#include "rampsvm/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rampsvm/error.hpp"
#include "rampsvm/ramp_loss.hpp"

namespace rampsvm {

ProxParams::ProxParams(double gamma, double C) : gamma_(gamma), C_(C) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidInput("prox: gamma must be positive");
  if (!(C > 0.0) || !std::isfinite(C)) throw InvalidInput("prox: C must be positive");
}

double ProxSet::distance(double v) const {
  double best = std::abs(v - values_[0]);
  if (size_ == 2) best = std::min(best, std::abs(v - values_[1]));
  return best;
}

bool ProxSet::operator==(const ProxSet& other) const {
  if (size_ != other.size_) return false;
  for (std::size_t i = 0; i < size_; ++i)
    if (values_[i] != other.values_[i]) return false;
  return true;
}

double prox_objective(double v, double s, const ProxParams& params) {
  const double d = v - s;
  return params.C() * ramp_loss(v) + d * d / (2.0 * params.gamma());
}

ProxSet prox_moderate_step(double s, double gamma_c) {
  const double upper = 1.0 + gamma_c / 2.0;
  if (s > upper) return ProxSet::single(s);
  if (s == upper) return ProxSet::pair(s, s - gamma_c);
  if (s >= gamma_c) return ProxSet::single(s - gamma_c);
  if (s > 0.0) return ProxSet::single(0.0);
  return ProxSet::single(s);
}

ProxSet prox_large_step(double s, double gamma_c) {
  const double upper = std::sqrt(2.0 * gamma_c);
  if (s > upper) return ProxSet::single(s);
  if (s == upper) return ProxSet::pair(s, 0.0);
  if (s > 0.0) return ProxSet::single(0.0);
  return ProxSet::single(s);
}

ProxSet prox_scalar(double s, const ProxParams& params) {
  if (!std::isfinite(s)) throw InvalidInput("prox: non-finite argument");
  const double gc = params.gamma_c();
  return gc < 2.0 ? prox_moderate_step(s, gc) : prox_large_step(s, gc);
}

std::vector<ProxSet> prox_vector(const Eigen::Ref<const Eigen::VectorXd>& s,
                                 const ProxParams& params) {
  std::vector<ProxSet> out;
  out.reserve(static_cast<std::size_t>(s.size()));
  for (Eigen::Index i = 0; i < s.size(); ++i) out.push_back(prox_scalar(s(i), params));
  return out;
}

double prox_oracle(double s, const ProxParams& params) {
  if (!std::isfinite(s)) throw InvalidInput("prox_oracle: non-finite argument");
  const double C = params.C();
  const double inv_two_gamma = 1.0 / (2.0 * params.gamma());
  auto value = [&](double v) {
    const double d = v - s;
    return C * std::min(1.0, std::max(v, 0.0)) + d * d * inv_two_gamma;
  };

  double best_v = 0.0;
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](double v) {
    const double f = value(v);
    if (f < best) {
      best = f;
      best_v = v;
    }
  };

  consider(s);
  consider(s - params.gamma_c());
  consider(0.0);

  constexpr double step = 1e-4;
  const double lo = std::min(s, -1.0) - 1.0;
  const double hi = std::max(s, 2.0) + 1.0;
  const auto count = static_cast<long>(std::floor((hi - lo) / step));
  for (long k = 0; k <= count; ++k) consider(lo + static_cast<double>(k) * step);
  return best_v;
}

}  // namespace rampsvm
