#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "rampsvm/problem.hpp"

namespace rampsvm {

/// Candidate (w, b, u, lambda) for the constrained form
///   min 0.5||w||^2 + C sum ramp(u_i)  s.t.  u + A w + b y = 1.
struct PrimalDualPoint {
  Eigen::VectorXd w;
  double b = 0.0;
  Eigen::VectorXd u;
  Eigen::VectorXd lambda;
};

enum class Verdict { PStationary, KktOnly, Neither };

std::string_view to_string(Verdict v);

/// Residuals of the P-stationarity system at one gamma:
///   r_grad = ||w + A^T lambda||_inf
///   r_y    = |<y, lambda>|
///   r_feas = ||u + A w + b y - 1||_inf
///   r_prox = max_i dist(u_i, prox(u_i - gamma lambda_i))
struct Certificate {
  double r_grad = 0.0;
  double r_y = 0.0;
  double r_feas = 0.0;
  double r_prox = 0.0;
  Eigen::Index worst_prox_index = -1;
  Eigen::VectorXd prox_distance;  // per-sample set distance behind r_prox
  double gamma = 0.0;
  Verdict verdict = Verdict::Neither;

  double max_residual() const;
};

/// KKT residuals; r_mult is the largest distance of lambda_i from the
/// interval C * (-subdifferential) prescribed by u_i.
struct KktReport {
  double r_grad = 0.0;
  double r_y = 0.0;
  double r_feas = 0.0;
  double r_mult = 0.0;
  Eigen::Index worst_mult_index = -1;
  bool satisfied = false;

  double max_residual() const;
};

/// Evaluates the four P-stationarity residuals at `gamma`. The verdict is
/// PStationary iff every residual is <= tol, else Neither (KKT status is not
/// examined here; see grade_point).
Certificate check_pstationary(const PrimalDualPoint& point, const ProblemData& problem, double C,
                              double gamma, double tol);

/// KKT check. The lambda_i interval is picked from u_i after snapping u_i to
/// 0 or 1 when it lies within tol of either breakpoint:
///   u_i in {0,1}       -> [-C, 0]
///   u_i in (0,1)       -> {-C}
///   u_i < 0 or u_i > 1 -> {0}
KktReport check_kkt(const PrimalDualPoint& point, const ProblemData& problem, double C, double tol);

struct MultiplierEstimate {
  Eigen::VectorXd lambda;
  double residual = 0.0;  // ||B^T lambda - (-w; 0)||_inf
};

/// Minimum-norm least-squares solution of A^T lambda = -w, y^T lambda = 0.
MultiplierEstimate estimate_multiplier(const Eigen::Ref<const Eigen::VectorXd>& w,
                                       const ProblemData& problem);

/// Least-squares multiplier restricted to the pattern the subdifferential
/// allows at u = 1 - A w - b y: lambda_i = -C where u_i is in (0,1),
/// lambda_i = 0 where u_i < 0 or u_i > 1, and the remaining entries (u_i
/// within snap_tol of 0 or 1) solved for by least squares subject to
/// -C <= lambda_i <= 0. When the unconstrained minimum-norm solution is
/// already inside the bounds it is returned unchanged.
MultiplierEstimate estimate_multiplier_on_pattern(const Eigen::Ref<const Eigen::VectorXd>& w,
                                                  double b, const ProblemData& problem, double C,
                                                  double snap_tol);

/// Default gamma probes: 0.5/lambda_h when available, then 2/C and 4/C.
std::vector<double> default_gammas(const ProblemData& problem, double C);

enum class MultiplierRule { MinimumNorm, SubdifferentialPattern };

struct Grade {
  PrimalDualPoint point;
  double multiplier_residual = 0.0;
  std::vector<Certificate> per_gamma;
  KktReport kkt;
  Verdict verdict = Verdict::Neither;
  /// Index into per_gamma of the first passing gamma, or of the smallest
  /// max residual when none passes.
  std::size_t best = 0;

  const Certificate& certificate() const { return per_gamma[best]; }
};

/// Grades a primal point (w, b): u := 1 - A w - b y, lambda estimated by `rule`,
/// then P-stationarity at every gamma in `gammas` and KKT at tol.
/// Verdict: PStationary if any gamma passes, else KktOnly if KKT holds, else Neither.
Grade grade_point(const Eigen::Ref<const Eigen::VectorXd>& w, double b, const ProblemData& problem,
                  double C, const std::vector<double>& gammas, double tol,
                  MultiplierRule rule = MultiplierRule::SubdifferentialPattern);

/// Same, with a caller-supplied multiplier instead of an estimate.
Grade grade_point(const Eigen::Ref<const Eigen::VectorXd>& w, double b,
                  const Eigen::Ref<const Eigen::VectorXd>& lambda, const ProblemData& problem,
                  double C, const std::vector<double>& gammas, double tol);

}  // namespace rampsvm
