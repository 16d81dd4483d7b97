#include "rampsvm/support.hpp"

#include <cmath>
#include <string>

#include "rampsvm/error.hpp"

namespace rampsvm {

SupportSet extract_support(const PrimalDualPoint& point, const ProblemData& problem, double sv_tol,
                           Verdict source) {
  if (point.lambda.size() != problem.m() || point.w.size() != problem.n())
    throw InvalidInput("extract_support: point dimensions do not match the problem");
  if (!(sv_tol >= 0.0)) throw InvalidInput("extract_support: sv_tol must be nonnegative");

  SupportSet out;
  out.source_verdict = source;
  const Eigen::VectorXd margins = problem.A * point.w + point.b * problem.y;
  for (Eigen::Index i = 0; i < problem.m(); ++i) {
    if (std::abs(point.lambda(i)) > sv_tol) {
      out.indices.push_back(i);
      out.lambdas.push_back(point.lambda(i));
      out.margins.push_back(margins(i));
    }
  }
  return out;
}

Eigen::VectorXd reconstruct_w(const Eigen::Ref<const Eigen::VectorXd>& lambda,
                              const ProblemData& problem) {
  if (lambda.size() != problem.m())
    throw InvalidInput("reconstruct_w: lambda has length " + std::to_string(lambda.size()) +
                       ", expected " + std::to_string(problem.m()));
  return -(problem.A.transpose() * lambda);
}

MarginCheck verify_support_margins(const PrimalDualPoint& point, const ProblemData& problem,
                                   double C, double gamma, double tol, double sv_tol) {
  if (!(gamma > 0.0) || !(C > 0.0)) throw InvalidInput("margin check: gamma and C must be positive");
  if (gamma * C < 2.0)
    throw InvalidInput("margin check requires gamma*C >= 2, got gamma*C = " +
                       std::to_string(gamma * C));
  if (point.u.size() != problem.m())
    throw InvalidInput("margin check: u has the wrong length");

  MarginCheck out;
  out.support = extract_support(point, problem, sv_tol);
  for (Eigen::Index i : out.support.indices)
    out.max_deviation = std::max(out.max_deviation, std::abs(point.u(i)));
  out.holds = out.max_deviation <= 10.0 * tol;
  return out;
}

}  // namespace rampsvm
