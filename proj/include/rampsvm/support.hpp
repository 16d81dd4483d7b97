#pragma once

#include <vector>

#include <Eigen/Core>

#include "rampsvm/certify.hpp"
#include "rampsvm/problem.hpp"

namespace rampsvm {

/// Samples with a nonzero multiplier. Indices are 0-based and sorted.
struct SupportSet {
  std::vector<Eigen::Index> indices;
  std::vector<double> lambdas;
  std::vector<double> margins;  // y_i (<w, x_i> + b)
  Verdict source_verdict = Verdict::Neither;
};

/// J = { i : |lambda_i| > sv_tol }. `source` tags the certification status of
/// the point so that margin-geometry checks are not run on KKT-only points.
SupportSet extract_support(const PrimalDualPoint& point, const ProblemData& problem,
                           double sv_tol = 1e-8, Verdict source = Verdict::PStationary);

/// w = -A^T lambda.
Eigen::VectorXd reconstruct_w(const Eigen::Ref<const Eigen::VectorXd>& lambda,
                              const ProblemData& problem);

struct MarginCheck {
  bool holds = false;
  double max_deviation = 0.0;  // max |u_i| over the support set
  SupportSet support;
};

/// For gamma*C >= 2, every support vector of a P-stationary point should sit
/// on y_i (<w, x_i> + b) = 1, i.e. u_i = 0. Holds iff max |u_i| <= 10 tol.
/// Throws InvalidInput when gamma*C < 2. Certifying the point first is the
/// caller's job.
MarginCheck verify_support_margins(const PrimalDualPoint& point, const ProblemData& problem,
                                   double C, double gamma, double tol, double sv_tol = 1e-8);

}  // namespace rampsvm
