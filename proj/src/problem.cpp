#include "rampsvm/problem.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Cholesky>

#include "rampsvm/error.hpp"

namespace rampsvm {

namespace {

constexpr double kRankPivotRatio = 1e-10;

bool has_full_column_rank(const Eigen::MatrixXd& B, const Eigen::MatrixXd& gram) {
  if (B.rows() < B.cols()) return false;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success) return false;
  const Eigen::VectorXd pivots = ldlt.vectorD();
  const double largest = pivots.maxCoeff();
  return largest > 0.0 && pivots.minCoeff() > kRankPivotRatio * largest;
}

}  // namespace

ProblemData build_problem(Dataset data) {
  data.validate();
  ProblemData p;
  const Eigen::Index m = data.m();
  const Eigen::Index n = data.n();

  p.y = data.labels;
  p.A = data.labels.asDiagonal() * data.features;
  p.B.resize(m, n + 1);
  p.B.leftCols(n) = p.A;
  p.B.col(n) = p.y;

  const Eigen::MatrixXd gram = p.B.transpose() * p.B;
  if (has_full_column_rank(p.B, gram)) {
    const Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() == Eigen::Success) {
      p.Bdag = llt.solve(p.B.transpose());
      Eigen::MatrixXd H = *p.Bdag;
      H.row(n).setZero();
      p.lambda_h = largest_eigenvalue_gram(H);
      p.H = std::move(H);
    }
  }
  p.data = std::move(data);
  return p;
}

double lambda_H(const ProblemData& problem) {
  if (!problem.lambda_h)
    throw NumericalError("lambda_H: B is not of full column rank, H is undefined");
  return *problem.lambda_h;
}

double largest_eigenvalue_gram(const Eigen::Ref<const Eigen::MatrixXd>& H,
                               const PowerIterationOptions& options) {
  const Eigen::Index m = H.cols();
  if (m == 0) return 0.0;

  // Returns nullopt when the iterate collapses (start orthogonal to the row space).
  auto iterate = [&](Eigen::VectorXd v) -> std::optional<double> {
    double rayleigh = 0.0;
    for (int it = 0; it < options.max_iter; ++it) {
      const Eigen::VectorXd hv = H * v;
      const double next = hv.squaredNorm();
      const Eigen::VectorXd z = H.transpose() * hv;
      const double znorm = z.norm();
      if (znorm == 0.0 || !std::isfinite(znorm)) return std::nullopt;
      v = z / znorm;
      if (it > 0 && std::abs(next - rayleigh) <= options.rel_tol * next) return next;
      rayleigh = next;
    }
    return rayleigh;
  };

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  auto random_start = [&] {
    Eigen::VectorXd v(m);
    for (Eigen::Index i = 0; i < m; ++i) v(i) = normal(rng);
    return Eigen::VectorXd(v.normalized());
  };

  // The all-ones start can be exactly orthogonal to the top eigenvector, in
  // which case it converges to a smaller eigenvalue. A second run from a
  // seeded random start guards against that.
  std::optional<double> best = iterate(Eigen::VectorXd::Ones(m) / std::sqrt(static_cast<double>(m)));
  constexpr int kRandomStarts = 4;
  for (int k = 0; k < kRandomStarts; ++k) {
    const std::optional<double> r = iterate(random_start());
    if (!r) continue;
    best = best ? std::max(*best, *r) : *r;
    break;
  }
  return best.value_or(0.0);
}

Eigen::VectorXd solve_spd(const Eigen::Ref<const Eigen::MatrixXd>& M,
                          const Eigen::Ref<const Eigen::VectorXd>& rhs) {
  if (M.rows() != M.cols()) throw InvalidInput("solve_spd: matrix is not square");
  if (rhs.size() != M.rows())
    throw InvalidInput("solve_spd: right-hand side has length " + std::to_string(rhs.size()) +
                       ", expected " + std::to_string(M.rows()));
  if (!M.allFinite() || !rhs.allFinite()) throw InvalidInput("solve_spd: non-finite input");
  const double scale = M.cwiseAbs().maxCoeff();
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + scale))
    throw NumericalError("solve_spd: matrix is not symmetric");
  const Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success)
    throw NumericalError("solve_spd: matrix is not positive definite");
  return llt.solve(rhs);
}

}  // namespace rampsvm
