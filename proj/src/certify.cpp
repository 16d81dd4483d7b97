#include "rampsvm/certify.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "rampsvm/error.hpp"
#include "rampsvm/prox.hpp"
#include "rampsvm/ramp_loss.hpp"

namespace rampsvm {

namespace {

void check_dimensions(const PrimalDualPoint& point, const ProblemData& problem) {
  auto mismatch = [](const char* name, Eigen::Index got, Eigen::Index want) {
    return InvalidInput(std::string("point: ") + name + " has length " + std::to_string(got) +
                        ", expected " + std::to_string(want));
  };
  if (point.w.size() != problem.n()) throw mismatch("w", point.w.size(), problem.n());
  if (point.u.size() != problem.m()) throw mismatch("u", point.u.size(), problem.m());
  if (point.lambda.size() != problem.m())
    throw mismatch("lambda", point.lambda.size(), problem.m());
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw InvalidInput(std::string(name) + " must be positive and finite");
}

double inf_norm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

struct LinearResiduals {
  double grad;
  double y;
  double feas;
};

LinearResiduals linear_residuals(const PrimalDualPoint& point, const ProblemData& problem) {
  const Eigen::VectorXd grad = point.w + problem.A.transpose() * point.lambda;
  Eigen::VectorXd feas = point.u + problem.A * point.w + point.b * problem.y;
  feas.array() -= 1.0;
  return {inf_norm(grad), std::abs(problem.y.dot(point.lambda)), inf_norm(feas)};
}

Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& M, const Eigen::VectorXd& rhs) {
  if (M.cols() == 0) return Eigen::VectorXd(0);
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(M);
  return cod.solve(rhs);
}

// min ||M x - r|| subject to lo <= x <= hi. Starts from the clipped
// minimum-norm solution, then alternates a line-searched solve over the free
// variables with releasing the bound variable whose gradient points inward.
// Sized for a handful of columns; M may be rank deficient.
Eigen::VectorXd bounded_least_squares(const Eigen::MatrixXd& M, const Eigen::VectorXd& r, double lo,
                                      double hi) {
  const Eigen::Index k = M.cols();
  Eigen::VectorXd x = min_norm_solve(M, r);
  std::vector<char> is_free(static_cast<std::size_t>(k), 1);
  bool clipped = false;
  for (Eigen::Index j = 0; j < k; ++j) {
    if (x(j) < lo || x(j) > hi) {
      x(j) = x(j) < lo ? lo : hi;
      is_free[static_cast<std::size_t>(j)] = 0;
      clipped = true;
    }
  }
  if (!clipped) return x;

  const double eps = 1e-13 * (1.0 + M.cwiseAbs().maxCoeff() * (1.0 + r.cwiseAbs().maxCoeff()));
  const int max_outer = 4 * static_cast<int>(k) + 20;
  for (int outer = 0; outer < max_outer; ++outer) {
    for (Eigen::Index inner = 0; inner <= k; ++inner) {
      std::vector<Eigen::Index> F;
      for (Eigen::Index j = 0; j < k; ++j)
        if (is_free[static_cast<std::size_t>(j)]) F.push_back(j);
      if (F.empty()) break;
      const auto nf = static_cast<Eigen::Index>(F.size());
      Eigen::MatrixXd MF(M.rows(), nf);
      Eigen::VectorXd xF(nf);
      for (Eigen::Index t = 0; t < nf; ++t) {
        MF.col(t) = M.col(F[t]);
        xF(t) = x(F[t]);
      }
      const Eigen::VectorXd z = min_norm_solve(MF, r - M * x + MF * xF);
      double alpha = 1.0;
      for (Eigen::Index t = 0; t < nf; ++t) {
        if (z(t) < lo) alpha = std::min(alpha, (xF(t) - lo) / (xF(t) - z(t)));
        if (z(t) > hi) alpha = std::min(alpha, (hi - xF(t)) / (z(t) - xF(t)));
      }
      alpha = std::max(alpha, 0.0);
      for (Eigen::Index t = 0; t < nf; ++t) {
        double v = xF(t) + alpha * (z(t) - xF(t));
        if (alpha < 1.0 && (v <= lo + eps || v >= hi - eps) && (z(t) < lo || z(t) > hi)) {
          v = v <= lo + eps ? lo : hi;
          is_free[static_cast<std::size_t>(F[t])] = 0;
        }
        x(F[t]) = std::clamp(v, lo, hi);
      }
      if (alpha >= 1.0) break;
    }

    const Eigen::VectorXd g = M.transpose() * (r - M * x);  // descent direction
    Eigen::Index release = -1;
    double best = eps;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (is_free[static_cast<std::size_t>(j)]) continue;
      const double push = x(j) <= lo ? g(j) : -g(j);
      if (push > best) {
        best = push;
        release = j;
      }
    }
    if (release < 0) break;
    is_free[static_cast<std::size_t>(release)] = 1;
  }
  return x;
}

Eigen::VectorXd multiplier_rhs(const Eigen::Ref<const Eigen::VectorXd>& w,
                               const ProblemData& problem) {
  if (w.size() != problem.n())
    throw InvalidInput("weight vector has length " + std::to_string(w.size()) + ", expected " +
                       std::to_string(problem.n()));
  Eigen::VectorXd rhs(problem.n() + 1);
  rhs.head(problem.n()) = -w;
  rhs(problem.n()) = 0.0;
  return rhs;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::PStationary:
      return "P_STATIONARY";
    case Verdict::KktOnly:
      return "KKT_ONLY";
    case Verdict::Neither:
      return "NEITHER";
  }
  return "NEITHER";
}

double Certificate::max_residual() const { return std::max({r_grad, r_y, r_feas, r_prox}); }

double KktReport::max_residual() const { return std::max({r_grad, r_y, r_feas, r_mult}); }

Certificate check_pstationary(const PrimalDualPoint& point, const ProblemData& problem, double C,
                              double gamma, double tol) {
  require_positive(tol, "tol");
  const ProxParams params(gamma, C);
  check_dimensions(point, problem);

  const auto lin = linear_residuals(point, problem);
  Certificate cert;
  cert.r_grad = lin.grad;
  cert.r_y = lin.y;
  cert.r_feas = lin.feas;
  cert.gamma = gamma;
  cert.prox_distance.resize(problem.m());
  for (Eigen::Index i = 0; i < problem.m(); ++i) {
    const double u = point.u(i);
    const double d = prox_scalar(u - gamma * point.lambda(i), params).distance(u);
    cert.prox_distance(i) = d;
    if (cert.worst_prox_index < 0 || d > cert.r_prox) {
      cert.r_prox = d;
      cert.worst_prox_index = i;
    }
  }
  cert.verdict = cert.max_residual() <= tol ? Verdict::PStationary : Verdict::Neither;
  return cert;
}

KktReport check_kkt(const PrimalDualPoint& point, const ProblemData& problem, double C,
                    double tol) {
  require_positive(C, "C");
  require_positive(tol, "tol");
  check_dimensions(point, problem);

  const auto lin = linear_residuals(point, problem);
  KktReport report;
  report.r_grad = lin.grad;
  report.r_y = lin.y;
  report.r_feas = lin.feas;
  for (Eigen::Index i = 0; i < problem.m(); ++i) {
    const double u = point.u(i);
    double lo = 0.0;
    double hi = 0.0;
    if (std::abs(u) <= tol || std::abs(u - 1.0) <= tol) {
      lo = -C;
    } else if (u > 0.0 && u < 1.0) {
      lo = hi = -C;
    }
    const double lam = point.lambda(i);
    const double d = lam < lo ? lo - lam : (lam > hi ? lam - hi : 0.0);
    if (report.worst_mult_index < 0 || d > report.r_mult) {
      report.r_mult = d;
      report.worst_mult_index = i;
    }
  }
  report.satisfied = report.max_residual() <= tol;
  return report;
}

MultiplierEstimate estimate_multiplier(const Eigen::Ref<const Eigen::VectorXd>& w,
                                       const ProblemData& problem) {
  const Eigen::VectorXd rhs = multiplier_rhs(w, problem);
  const Eigen::MatrixXd Bt = problem.B.transpose();
  MultiplierEstimate est;
  est.lambda = min_norm_solve(Bt, rhs);
  est.residual = inf_norm(Bt * est.lambda - rhs);
  return est;
}

MultiplierEstimate estimate_multiplier_on_pattern(const Eigen::Ref<const Eigen::VectorXd>& w,
                                                  double b, const ProblemData& problem, double C,
                                                  double snap_tol) {
  require_positive(C, "C");
  if (!(snap_tol >= 0.0)) throw InvalidInput("snap_tol must be nonnegative");
  const Eigen::VectorXd rhs = multiplier_rhs(w, problem);
  const Eigen::VectorXd u = margin_slack(w, b, problem.data);
  const Eigen::MatrixXd Bt = problem.B.transpose();

  MultiplierEstimate est;
  est.lambda = Eigen::VectorXd::Zero(problem.m());
  std::vector<Eigen::Index> free;
  for (Eigen::Index i = 0; i < problem.m(); ++i) {
    if (std::abs(u(i)) <= snap_tol || std::abs(u(i) - 1.0) <= snap_tol) {
      free.push_back(i);
    } else if (u(i) > 0.0 && u(i) < 1.0) {
      est.lambda(i) = -C;
    }
  }

  if (!free.empty()) {
    Eigen::MatrixXd Bt_free(Bt.rows(), static_cast<Eigen::Index>(free.size()));
    for (std::size_t k = 0; k < free.size(); ++k)
      Bt_free.col(static_cast<Eigen::Index>(k)) = Bt.col(free[k]);
    const Eigen::VectorXd sub = bounded_least_squares(Bt_free, rhs - Bt * est.lambda, -C, 0.0);
    for (std::size_t k = 0; k < free.size(); ++k)
      est.lambda(free[k]) = sub(static_cast<Eigen::Index>(k));
  }
  est.residual = inf_norm(Bt * est.lambda - rhs);
  return est;
}

std::vector<double> default_gammas(const ProblemData& problem, double C) {
  require_positive(C, "C");
  std::vector<double> gammas;
  if (problem.lambda_h && *problem.lambda_h > 0.0) gammas.push_back(0.5 / *problem.lambda_h);
  gammas.push_back(2.0 / C);
  gammas.push_back(4.0 / C);
  return gammas;
}

namespace {

Grade grade_with(PrimalDualPoint point, double multiplier_residual, const ProblemData& problem,
                 double C, const std::vector<double>& gammas, double tol) {
  if (gammas.empty()) throw InvalidInput("grade_point: gamma list is empty");
  Grade g;
  g.multiplier_residual = multiplier_residual;
  g.per_gamma.reserve(gammas.size());
  for (double gamma : gammas) g.per_gamma.push_back(check_pstationary(point, problem, C, gamma, tol));
  g.kkt = check_kkt(point, problem, C, tol);

  auto passing = std::find_if(g.per_gamma.begin(), g.per_gamma.end(), [](const Certificate& c) {
    return c.verdict == Verdict::PStationary;
  });
  if (passing != g.per_gamma.end()) {
    g.best = static_cast<std::size_t>(passing - g.per_gamma.begin());
    g.verdict = Verdict::PStationary;
  } else {
    auto smallest = std::min_element(
        g.per_gamma.begin(), g.per_gamma.end(),
        [](const Certificate& a, const Certificate& b) { return a.max_residual() < b.max_residual(); });
    g.best = static_cast<std::size_t>(smallest - g.per_gamma.begin());
    g.verdict = g.kkt.satisfied ? Verdict::KktOnly : Verdict::Neither;
  }
  g.per_gamma[g.best].verdict = g.verdict;
  g.point = std::move(point);
  return g;
}

}  // namespace

Grade grade_point(const Eigen::Ref<const Eigen::VectorXd>& w, double b, const ProblemData& problem,
                  double C, const std::vector<double>& gammas, double tol, MultiplierRule rule) {
  const MultiplierEstimate est = rule == MultiplierRule::MinimumNorm
                                     ? estimate_multiplier(w, problem)
                                     : estimate_multiplier_on_pattern(w, b, problem, C, tol);
  PrimalDualPoint point{w, b, margin_slack(w, b, problem.data), est.lambda};
  return grade_with(std::move(point), est.residual, problem, C, gammas, tol);
}

Grade grade_point(const Eigen::Ref<const Eigen::VectorXd>& w, double b,
                  const Eigen::Ref<const Eigen::VectorXd>& lambda, const ProblemData& problem,
                  double C, const std::vector<double>& gammas, double tol) {
  if (lambda.size() != problem.m())
    throw InvalidInput("lambda has length " + std::to_string(lambda.size()) + ", expected " +
                       std::to_string(problem.m()));
  PrimalDualPoint point{w, b, margin_slack(w, b, problem.data), lambda};
  const double residual = (problem.B.transpose() * point.lambda - multiplier_rhs(w, problem))
                              .cwiseAbs()
                              .maxCoeff();
  return grade_with(std::move(point), residual, problem, C, gammas, tol);
}

}  // namespace rampsvm
