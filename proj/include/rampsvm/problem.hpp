#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "rampsvm/dataset.hpp"

namespace rampsvm {

/// Matrices derived from a dataset.
///
///   A     m x n        row i = y_i x_i^T
///   y     m            labels
///   B     m x (n+1)    [A y]
///   Bdag  (n+1) x m    (B^T B)^{-1} B^T, only when B has full column rank
///   H     (n+1) x m    Bdag with its last row zeroed, i.e. blockdiag(I_n, 0) Bdag
///   lambda_h           largest eigenvalue of H^T H
///
/// Immutable after build_problem returns.
struct ProblemData {
  Dataset data;
  Eigen::MatrixXd A;
  Eigen::VectorXd y;
  Eigen::MatrixXd B;
  std::optional<Eigen::MatrixXd> Bdag;
  std::optional<Eigen::MatrixXd> H;
  std::optional<double> lambda_h;

  Eigen::Index m() const { return A.rows(); }
  Eigen::Index n() const { return A.cols(); }
  bool full_column_rank() const { return Bdag.has_value(); }
};

/// Assembles A, y, B. When B has full column rank (judged from the pivots of
/// an LDL^T factorization of B^T B against 1e-10 times the largest pivot) also
/// forms Bdag, H and lambda_h; otherwise those stay empty.
ProblemData build_problem(Dataset data);

/// lambda_h of a full-column-rank problem. Throws NumericalError when H is absent.
double lambda_H(const ProblemData& problem);

struct PowerIterationOptions {
  double rel_tol = 1e-10;
  int max_iter = 10000;
  std::uint64_t seed = 0x5eed;
};

/// Largest eigenvalue of H^T H by power iteration on v <- H^T (H v).
/// Starts from the normalized all-ones vector and restarts from a seeded
/// random vector if the iterate collapses to zero.
double largest_eigenvalue_gram(const Eigen::Ref<const Eigen::MatrixXd>& H,
                               const PowerIterationOptions& options = {});

/// Solves M x = rhs for symmetric positive-definite M by Cholesky.
/// Throws NumericalError if M is not symmetric or the factorization fails.
Eigen::VectorXd solve_spd(const Eigen::Ref<const Eigen::MatrixXd>& M,
                          const Eigen::Ref<const Eigen::VectorXd>& rhs);

}  // namespace rampsvm
