#include "rampsvm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "rampsvm/error.hpp"
#include "rampsvm/prox.hpp"
#include "rampsvm/ramp_loss.hpp"

namespace rampsvm {

void SolverConfig::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(C)) throw InvalidInput("solver: C must be positive");
  if (!positive(sigma)) throw InvalidInput("solver: sigma must be positive");
  if (!positive(tol)) throw InvalidInput("solver: tol must be positive");
  if (max_iter < 1) throw InvalidInput("solver: max_iter must be at least 1");
}

SolverConfig default_config(double C) {
  SolverConfig config;
  config.C = C;
  config.sigma = C / 2.0;
  return config;
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged:
      return "CONVERGED";
    case SolveStatus::MaxIter:
      return "MAX_ITER";
    case SolveStatus::Diverged:
      return "DIVERGED";
  }
  return "DIVERGED";
}

namespace {

// Re-solves the stationarity system with the active pattern of `point` frozen:
// u_i = 0 rows keep a free multiplier and pin the margin to 1, rows in the
// linear piece (0 < u_i < 1, only reachable when gamma*C < 2) get lambda_i = -C,
// all others lambda_i = 0.
PrimalDualPoint polish_point(const PrimalDualPoint& point, const ProblemData& problem, double C) {
  const Eigen::Index m = problem.m();
  std::vector<Eigen::Index> zero_rows;
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double u = point.u(i);
    if (u == 0.0) {
      zero_rows.push_back(i);
    } else if (u > 0.0 && u < 1.0) {
      lambda(i) = -C;
    }
  }

  const Eigen::VectorXd w_fixed = -problem.A.transpose() * lambda;
  const double y_fixed = problem.y.dot(lambda);
  double b = point.b;
  const auto k = static_cast<Eigen::Index>(zero_rows.size());
  if (k > 0) {
    // [ -A_S A_S^T  y_S ] [lambda_S]   [ 1 - A_S w_fixed ]
    // [   y_S^T      0  ] [   b    ] = [    -y_fixed     ]
    Eigen::MatrixXd A_S(k, problem.n());
    Eigen::VectorXd y_S(k);
    for (Eigen::Index r = 0; r < k; ++r) {
      A_S.row(r) = problem.A.row(zero_rows[static_cast<std::size_t>(r)]);
      y_S(r) = problem.y(zero_rows[static_cast<std::size_t>(r)]);
    }
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(k + 1, k + 1);
    K.topLeftCorner(k, k) = -A_S * A_S.transpose();
    K.topRightCorner(k, 1) = y_S;
    K.bottomLeftCorner(1, k) = y_S.transpose();
    Eigen::VectorXd rhs(k + 1);
    rhs.head(k) = Eigen::VectorXd::Ones(k) - A_S * w_fixed;
    rhs(k) = -y_fixed;
    // Smallest correction to the current (lambda_S, b); K is singular when
    // more than n + 1 margins are pinned.
    Eigen::VectorXd current(k + 1);
    for (Eigen::Index r = 0; r < k; ++r)
      current(r) = point.lambda(zero_rows[static_cast<std::size_t>(r)]);
    current(k) = point.b;
    const Eigen::VectorXd sol =
        current + Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(K).solve(rhs - K * current);
    for (Eigen::Index r = 0; r < k; ++r) lambda(zero_rows[static_cast<std::size_t>(r)]) = sol(r);
    b = sol(k);
  }

  PrimalDualPoint out;
  out.lambda = std::move(lambda);
  out.w = -problem.A.transpose() * out.lambda;
  out.b = b;
  out.u = margin_slack(out.w, out.b, problem.data);
  return out;
}

}  // namespace

SolveResult train_admm(const ProblemData& problem, const SolverConfig& config) {
  config.validate();
  const Eigen::Index m = problem.m();
  const Eigen::Index n = problem.n();
  const double sigma = config.sigma;
  const double gamma = config.gamma();
  const ProxParams params(gamma, config.C);

  SolveResult result;
  PrimalDualPoint& p = result.point;
  p.w = Eigen::VectorXd::Zero(n);
  p.b = 0.0;
  p.u = Eigen::VectorXd::Ones(m);
  p.lambda = Eigen::VectorXd::Zero(m);

  Eigen::MatrixXd K = sigma * (problem.B.transpose() * problem.B);
  K.diagonal().head(n).array() += 1.0;
  const Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() != Eigen::Success) {
    result.status = SolveStatus::Diverged;
    result.message = "(w, b) system is not positive definite";
    result.certificate = check_pstationary(p, problem, config.C, gamma, config.tol);
    result.objective = objective(p.w, p.b, problem.data, config.C);
    return result;
  }

  Eigen::VectorXd margin = Eigen::VectorXd::Zero(m);  // A w + b y
  Eigen::VectorXd wb(n + 1);
  result.status = SolveStatus::MaxIter;
  for (int it = 1; it <= config.max_iter; ++it) {
    result.iterations = it;
    const Eigen::VectorXd s = (1.0 - margin.array() - p.lambda.array() / sigma).matrix();
    for (Eigen::Index i = 0; i < m; ++i) p.u(i) = prox_scalar(s(i), params).first();

    const Eigen::VectorXd r = (p.u.array() - 1.0 + p.lambda.array() / sigma).matrix();
    wb = llt.solve(-sigma * (problem.B.transpose() * r));
    p.w = wb.head(n);
    p.b = wb(n);
    margin = problem.B * wb;
    p.lambda += sigma * (p.u + margin - Eigen::VectorXd::Ones(m));

    if (!p.w.allFinite() || !std::isfinite(p.b) || !p.lambda.allFinite()) {
      result.status = SolveStatus::Diverged;
      result.message = "iterates became non-finite";
      break;
    }
    result.certificate = check_pstationary(p, problem, config.C, gamma, config.tol);
    if (result.certificate.verdict == Verdict::PStationary) {
      result.status = SolveStatus::Converged;
      break;
    }
  }

  if (result.status == SolveStatus::Diverged) {
    result.certificate = Certificate{};
    result.certificate.r_grad = result.certificate.r_y = result.certificate.r_feas =
        result.certificate.r_prox = std::numeric_limits<double>::infinity();
    result.certificate.gamma = gamma;
    result.objective = std::numeric_limits<double>::quiet_NaN();
    return result;
  }

  if (result.status == SolveStatus::Converged && config.polish) {
    PrimalDualPoint polished = polish_point(p, problem, config.C);
    if (polished.w.allFinite() && std::isfinite(polished.b) && polished.lambda.allFinite()) {
      Certificate cert = check_pstationary(polished, problem, config.C, gamma, config.tol);
      if (cert.verdict == Verdict::PStationary &&
          cert.max_residual() <= result.certificate.max_residual()) {
        p = std::move(polished);
        result.certificate = std::move(cert);
        result.polished = true;
      }
    }
  }
  result.objective = objective(p.w, p.b, problem.data, config.C);
  return result;
}

SearchBox default_search_box(const ProblemData& problem, double C) {
  if (!(C > 0.0) || !std::isfinite(C)) throw InvalidInput("search box: C must be positive");
  const Eigen::Index n = problem.n();
  const double radius = std::sqrt(2.0 * C * static_cast<double>(problem.m()));
  const double x_max = problem.data.features.rowwise().lpNorm<1>().maxCoeff();
  const double b_radius = 1.0 + radius * x_max;
  SearchBox box;
  box.lo = Eigen::VectorXd::Constant(n + 1, -radius);
  box.hi = Eigen::VectorXd::Constant(n + 1, radius);
  box.lo(n) = -b_radius;
  box.hi(n) = b_radius;
  return box;
}

namespace {

// Evaluates the objective at z = (w, b) using the precomputed A and y.
class GridObjective {
 public:
  GridObjective(const ProblemData& problem, double C) : A_(problem.A), y_(problem.y), C_(C) {}

  double operator()(const Eigen::VectorXd& z) const {
    const Eigen::Index n = A_.cols();
    double loss = 0.0;
    for (Eigen::Index i = 0; i < A_.rows(); ++i) {
      const double u = 1.0 - A_.row(i).dot(z.head(n)) - y_(i) * z(n);
      loss += std::min(1.0, std::max(u, 0.0));
    }
    return 0.5 * z.head(n).squaredNorm() + C_ * loss;
  }

 private:
  const Eigen::MatrixXd& A_;
  const Eigen::VectorXd& y_;
  double C_;
};

struct GridPoint {
  double value;
  Eigen::VectorXd z;
};

// Visits every point of the tensor grid lo + k * step (k = 0..counts) in
// lexicographic order.
template <typename Visit>
void for_each_grid_point(const Eigen::VectorXd& lo, double step, const std::vector<long>& counts,
                         Visit&& visit) {
  const auto d = static_cast<Eigen::Index>(counts.size());
  std::vector<long> idx(counts.size(), 0);
  Eigen::VectorXd z = lo;
  while (true) {
    visit(z, idx);
    Eigen::Index k = d - 1;
    while (k >= 0) {
      auto ku = static_cast<std::size_t>(k);
      if (++idx[ku] <= counts[ku]) {
        z(k) = lo(k) + static_cast<double>(idx[ku]) * step;
        break;
      }
      idx[ku] = 0;
      z(k) = lo(k);
      --k;
    }
    if (k < 0) return;
  }
}

GridPoint refine(const GridObjective& f, GridPoint start, double step, int levels) {
  constexpr int kMaxRecentres = 200;
  const auto d = start.z.size();
  std::vector<long> counts(static_cast<std::size_t>(d), 20);
  for (int level = 0; level < levels; ++level) {
    const double fine = step / 10.0;
    // Search the +-step window on the finer grid, recentring while the best
    // point keeps moving so that narrow valleys can be followed.
    for (int pass = 0; pass < kMaxRecentres; ++pass) {
      const Eigen::VectorXd lo = start.z.array() - step;
      GridPoint best = start;
      for_each_grid_point(lo, fine, counts, [&](const Eigen::VectorXd& z, const std::vector<long>&) {
        const double v = f(z);
        if (v < best.value) best = {v, z};
      });
      const bool moved = best.value < start.value;
      start = std::move(best);
      if (!moved) break;
    }
    step = fine;
  }
  return start;
}

}  // namespace

OracleResult global_oracle(const ProblemData& problem, double C, const SearchBox& box,
                           const OracleOptions& options) {
  const Eigen::Index n = problem.n();
  if (n > 2) throw InvalidInput("global_oracle: supports at most 2 features, got " + std::to_string(n));
  if (!(C > 0.0) || !std::isfinite(C)) throw InvalidInput("global_oracle: C must be positive");
  if (box.lo.size() != n + 1 || box.hi.size() != n + 1)
    throw InvalidInput("global_oracle: search box must have n + 1 coordinates");
  if (!box.lo.allFinite() || !box.hi.allFinite() || (box.hi.array() < box.lo.array()).any())
    throw InvalidInput("global_oracle: search box is empty or unbounded");
  if (!(options.coarse_step > 0.0)) throw InvalidInput("global_oracle: coarse_step must be positive");
  if (options.refine_levels < 0 || options.incumbents < 1)
    throw InvalidInput("global_oracle: invalid refinement options");

  const GridObjective f(problem, C);
  const double step = options.coarse_step;
  std::vector<long> counts(static_cast<std::size_t>(n + 1));
  for (Eigen::Index k = 0; k <= n; ++k)
    counts[static_cast<std::size_t>(k)] =
        static_cast<long>(std::floor((box.hi(k) - box.lo(k)) / step + 1e-9));

  // Coarse pass: keep a short list of the best points, then pick incumbents
  // greedily so that no two lie within two coarse steps of each other.
  const std::size_t pool_size = static_cast<std::size_t>(options.incumbents) * 64;
  std::vector<GridPoint> pool;
  pool.reserve(pool_size + 1);
  auto worse = [](const GridPoint& a, const GridPoint& b) { return a.value < b.value; };
  for_each_grid_point(box.lo, step, counts, [&](const Eigen::VectorXd& z, const std::vector<long>&) {
    const double v = f(z);
    if (pool.size() < pool_size) {
      pool.push_back({v, z});
      std::push_heap(pool.begin(), pool.end(), worse);
    } else if (v < pool.front().value) {
      std::pop_heap(pool.begin(), pool.end(), worse);
      pool.back() = {v, z};
      std::push_heap(pool.begin(), pool.end(), worse);
    }
  });
  std::sort_heap(pool.begin(), pool.end(), worse);

  std::vector<GridPoint> starts;
  for (const auto& candidate : pool) {
    if (static_cast<int>(starts.size()) >= options.incumbents) break;
    const bool separated = std::all_of(starts.begin(), starts.end(), [&](const GridPoint& s) {
      return (s.z - candidate.z).cwiseAbs().maxCoeff() > 2.0 * step;
    });
    if (separated) starts.push_back(candidate);
  }
  for (const auto& seed : options.seeds) {
    if (seed.size() != n + 1) throw InvalidInput("global_oracle: seed must have n + 1 coordinates");
    starts.push_back({f(seed), seed});
  }

  GridPoint best{std::numeric_limits<double>::infinity(), Eigen::VectorXd::Zero(n + 1)};
  for (auto& start : starts) {
    GridPoint refined = refine(f, start, step, options.refine_levels);
    if (refined.value < best.value) best = std::move(refined);
  }

  OracleResult out;
  out.w = best.z.head(n);
  out.b = best.z(n);
  out.objective = objective(out.w, out.b, problem.data, C);
  return out;
}

int predict(const Eigen::Ref<const Eigen::VectorXd>& w, double b,
            const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (w.size() != x.size())
    throw InvalidInput("predict: w has length " + std::to_string(w.size()) + ", x has length " +
                       std::to_string(x.size()));
  return w.dot(x) + b >= 0.0 ? 1 : -1;
}

}  // namespace rampsvm
