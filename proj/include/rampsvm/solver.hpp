#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "rampsvm/certify.hpp"
#include "rampsvm/problem.hpp"

namespace rampsvm {

struct SolverConfig {
  double C = 1.0;
  /// Augmented-Lagrangian penalty; the prox step is gamma = 1/sigma.
  double sigma = 0.5;
  /// Target for the largest P-stationarity residual.
  double tol = 1e-6;
  int max_iter = 10000;
  /// Recorded in reports. The update scheme itself draws no random numbers.
  std::uint64_t seed = 0;
  /// After convergence, re-solve the equality system of the detected active
  /// pattern and keep the result if it certifies at least as tightly.
  bool polish = true;

  double gamma() const { return 1.0 / sigma; }

  /// Throws InvalidInput on nonpositive or non-finite parameters.
  void validate() const;
};

/// sigma = C/2, which puts the prox at gamma*C = 2.
SolverConfig default_config(double C);

enum class SolveStatus { Converged, MaxIter, Diverged };

std::string_view to_string(SolveStatus s);

struct SolveResult {
  PrimalDualPoint point;
  Certificate certificate;
  int iterations = 0;
  double objective = 0.0;
  SolveStatus status = SolveStatus::MaxIter;
  bool polished = false;
  std::string message;
};

/// Proximal ADMM on u + A w + b y = 1. Starting from w = 0, b = 0, u = 1,
/// lambda = 0, each sweep does
///   u      <- first member of prox_{C/sigma}(1 - A w - b y - lambda/sigma)
///   (w, b) <- argmin 0.5||w||^2 + sigma/2 ||u + A w + b y - 1 + lambda/sigma||^2
///   lambda <- lambda + sigma (u + A w + b y - 1)
/// and stops once the P-stationarity residuals at gamma = 1/sigma are all <= tol.
/// The (w, b) system is factorized once per call.
SolveResult train_admm(const ProblemData& problem, const SolverConfig& config);

/// Axis-aligned box over (w_1, ..., w_n, b).
struct SearchBox {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
};

/// A box guaranteed to contain a global minimizer: |w_j| <= sqrt(2 C m),
/// and |b| <= 1 + sqrt(2 C m) max_i ||x_i||_1 (beyond that, moving b cannot
/// change any loss term).
SearchBox default_search_box(const ProblemData& problem, double C);

struct OracleResult {
  Eigen::VectorXd w;
  double b = 0.0;
  double objective = 0.0;
};

struct OracleOptions {
  double coarse_step = 0.1;
  int refine_levels = 5;
  /// Number of best coarse grid points refined independently.
  int incumbents = 8;
  /// Extra starting points for refinement, each (w_1..w_n, b).
  std::vector<Eigen::VectorXd> seeds;
};

/// Exhaustive grid search for the global minimum of the objective, n <= 2.
/// A coarse grid over the box is followed by `refine_levels` rounds of 10x
/// finer grids spanning one previous step around each incumbent.
OracleResult global_oracle(const ProblemData& problem, double C, const SearchBox& box,
                           const OracleOptions& options = {});

/// sign(<w, x> + b) with sign(0) = +1.
int predict(const Eigen::Ref<const Eigen::VectorXd>& w, double b,
            const Eigen::Ref<const Eigen::VectorXd>& x);

}  // namespace rampsvm
