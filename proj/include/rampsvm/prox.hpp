#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace rampsvm {

/// Step size gamma and penalty C of the ramp-loss proximal map.
class ProxParams {
 public:
  /// Throws InvalidInput unless both values are finite and positive.
  ProxParams(double gamma, double C);

  double gamma() const { return gamma_; }
  double C() const { return C_; }
  double gamma_c() const { return gamma_ * C_; }

 private:
  double gamma_;
  double C_;
};

/// Set-valued result of the ramp-loss prox: one minimizer, or two at a tie.
/// Members are stored in the order the closed form lists them (s first at a tie).
class ProxSet {
 public:
  static ProxSet single(double v) { return ProxSet({v, 0.0}, 1); }
  static ProxSet pair(double first, double second) { return ProxSet({first, second}, 2); }

  std::size_t size() const { return size_; }
  bool tie() const { return size_ == 2; }
  double first() const { return values_[0]; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return {values_.data(), size_}; }

  /// Distance from v to the nearest member.
  double distance(double v) const;

  bool operator==(const ProxSet& other) const;

 private:
  ProxSet(std::array<double, 2> values, std::size_t size) : values_(values), size_(size) {}

  std::array<double, 2> values_;
  std::size_t size_;
};

/// C * ramp(v) + (v - s)^2 / (2 gamma): the function the prox minimizes.
double prox_objective(double v, double s, const ProxParams& params);

/// Closed-form prox for gamma*C < 2. Thresholds 1 + gamma*C/2 and gamma*C.
/// Also valid (and identical to the large-step form) at gamma*C = 2.
ProxSet prox_moderate_step(double s, double gamma_c);

/// Closed-form prox for gamma*C >= 2. Threshold sqrt(2 gamma*C).
ProxSet prox_large_step(double s, double gamma_c);

/// Exact prox of the scalar ramp loss; dispatches on the gamma*C regime.
/// Ties are detected by exact comparison against the threshold.
ProxSet prox_scalar(double s, const ProxParams& params);

/// Componentwise prox of the summed ramp loss.
std::vector<ProxSet> prox_vector(const Eigen::Ref<const Eigen::VectorXd>& s,
                                 const ProxParams& params);

/// Brute-force minimizer of prox_objective: the candidates {s, s - gamma*C, 0}
/// followed by a uniform grid of step 1e-4 on [min(s,-1)-1, max(s,2)+1].
/// Returns the first point attaining the smallest value. Independent of the
/// closed forms above; meant as a reference.
double prox_oracle(double s, const ProxParams& params);

}  // namespace rampsvm
