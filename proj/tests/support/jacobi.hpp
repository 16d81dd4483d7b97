#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace rampsvm::testing {

// Cyclic Jacobi rotations on a dense symmetric matrix. Deliberately
// independent of Eigen's solvers so it can cross-check the power iteration.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, int max_sweeps = 100) {
  const Eigen::Index n = a.rows();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = a(i, i);
  std::sort(out.begin(), out.end());
  return out;
}

inline double jacobi_max_eigenvalue(const Eigen::MatrixXd& a) { return jacobi_eigenvalues(a).back(); }

}  // namespace rampsvm::testing
