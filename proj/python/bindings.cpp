#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rampsvm/certify.hpp"
#include "rampsvm/error.hpp"
#include "rampsvm/fixtures.hpp"
#include "rampsvm/problem.hpp"
#include "rampsvm/prox.hpp"
#include "rampsvm/ramp_loss.hpp"
#include "rampsvm/report.hpp"
#include "rampsvm/solver.hpp"
#include "rampsvm/support.hpp"
#include "rampsvm/synthetic.hpp"

namespace py = pybind11;
using namespace rampsvm;

namespace {

// Structured results cross the boundary as the same JSON the CLI prints; the
// Python package decodes them into dicts.
std::string dump(const nlohmann::json& j) { return j.dump(); }

Dataset make_dataset(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  Dataset d{X, y};
  d.validate();
  return d;
}

PrimalDualPoint make_point(const Eigen::VectorXd& w, double b, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& lambda) {
  return {w, b, u, lambda};
}

std::vector<std::vector<double>> sets_to_lists(const std::vector<ProxSet>& sets) {
  std::vector<std::vector<double>> out;
  out.reserve(sets.size());
  for (const auto& p : sets) out.emplace_back(p.values().begin(), p.values().end());
  return out;
}

}  // namespace

PYBIND11_MODULE(_rampsvm, m) {
  m.doc() = "Ramp-loss SVM: prox operator, P-stationarity certification and training";
  m.attr("__version__") = std::string(version());

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("ramp_loss", &ramp_loss, py::arg("t"));
  m.def("ramp_loss_sum", [](const Eigen::VectorXd& u) { return ramp_loss_sum(u); }, py::arg("u"));
  m.def(
      "ramp_subdiff",
      [](double t) {
        const auto g = ramp_subdiff(t);
        return py::make_tuple(g.lo, g.hi);
      },
      py::arg("t"), "Subdifferential interval (lo, hi) at t.");

  m.def(
      "prox_scalar",
      [](double s, double gamma, double C) {
        const ProxSet p = prox_scalar(s, ProxParams(gamma, C));
        return std::vector<double>(p.values().begin(), p.values().end());
      },
      py::arg("s"), py::arg("gamma"), py::arg("C"), "Prox set at s: one value, or two at a tie.");
  m.def(
      "prox_vector",
      [](const Eigen::VectorXd& s, double gamma, double C) {
        return sets_to_lists(prox_vector(s, ProxParams(gamma, C)));
      },
      py::arg("s"), py::arg("gamma"), py::arg("C"));
  m.def(
      "prox_oracle", [](double s, double gamma, double C) { return prox_oracle(s, ProxParams(gamma, C)); },
      py::arg("s"), py::arg("gamma"), py::arg("C"));

  py::class_<ProblemData>(m, "Problem")
      .def(py::init([](const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
             return build_problem(make_dataset(X, y));
           }),
           py::arg("X"), py::arg("y"))
      .def_property_readonly("m", &ProblemData::m)
      .def_property_readonly("n", &ProblemData::n)
      .def_readonly("A", &ProblemData::A)
      .def_readonly("y", &ProblemData::y)
      .def_readonly("B", &ProblemData::B)
      .def_readonly("H", &ProblemData::H)
      .def_readonly("lambda_h", &ProblemData::lambda_h)
      .def_property_readonly("full_column_rank", &ProblemData::full_column_rank)
      .def("summary_json", [](const ProblemData& p) { return dump(problem_summary(p)); });

  m.def("objective",
        [](const ProblemData& p, const Eigen::VectorXd& w, double b, double C) {
          return objective(w, b, p.data, C);
        },
        py::arg("problem"), py::arg("w"), py::arg("b"), py::arg("C"));

  m.def(
      "check_pstationary_json",
      [](const ProblemData& p, const Eigen::VectorXd& w, double b, const Eigen::VectorXd& u,
         const Eigen::VectorXd& lambda, double C, double gamma, double tol) {
        return dump(to_json(check_pstationary(make_point(w, b, u, lambda), p, C, gamma, tol)));
      },
      py::arg("problem"), py::arg("w"), py::arg("b"), py::arg("u"), py::arg("lam"), py::arg("C"),
      py::arg("gamma"), py::arg("tol") = 1e-6);
  m.def(
      "check_kkt_json",
      [](const ProblemData& p, const Eigen::VectorXd& w, double b, const Eigen::VectorXd& u,
         const Eigen::VectorXd& lambda, double C, double tol) {
        return dump(to_json(check_kkt(make_point(w, b, u, lambda), p, C, tol)));
      },
      py::arg("problem"), py::arg("w"), py::arg("b"), py::arg("u"), py::arg("lam"), py::arg("C"),
      py::arg("tol") = 1e-6);
  m.def(
      "estimate_multiplier",
      [](const ProblemData& p, const Eigen::VectorXd& w) {
        const MultiplierEstimate e = estimate_multiplier(w, p);
        return py::make_tuple(e.lambda, e.residual);
      },
      py::arg("problem"), py::arg("w"), "Minimum-norm multiplier and its residual.");
  m.def(
      "grade_point_json",
      [](const ProblemData& p, const Eigen::VectorXd& w, double b, double C,
         std::optional<std::vector<double>> gammas, double tol, std::optional<Eigen::VectorXd> lambda) {
        const std::vector<double> g = gammas ? *gammas : default_gammas(p, C);
        return dump(to_json(lambda ? grade_point(w, b, *lambda, p, C, g, tol) : grade_point(w, b, p, C, g, tol)));
      },
      py::arg("problem"), py::arg("w"), py::arg("b"), py::arg("C"), py::arg("gammas") = py::none(),
      py::arg("tol") = 1e-6, py::arg("lam") = py::none());

  m.def(
      "train_json",
      [](const ProblemData& p, double C, std::optional<double> sigma, double tol, int max_iter,
         std::uint64_t seed, bool polish) {
        SolverConfig cfg = default_config(C);
        if (sigma) cfg.sigma = *sigma;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        cfg.seed = seed;
        cfg.polish = polish;
        SolveResult r;
        {
          py::gil_scoped_release release;
          r = train_admm(p, cfg);
        }
        return dump(to_json(r, cfg));
      },
      py::arg("problem"), py::arg("C"), py::arg("sigma") = py::none(), py::arg("tol") = 1e-6,
      py::arg("max_iter") = 10000, py::arg("seed") = 0, py::arg("polish") = true);

  m.def(
      "global_oracle",
      [](const ProblemData& p, double C) {
        OracleResult r;
        {
          py::gil_scoped_release release;
          r = global_oracle(p, C, default_search_box(p, C));
        }
        return py::make_tuple(r.w, r.b, r.objective);
      },
      py::arg("problem"), py::arg("C"), "Grid-search global minimizer (n <= 2): (w, b, objective).");
  m.def(
      "predict",
      [](const Eigen::VectorXd& w, double b, const Eigen::VectorXd& x) { return predict(w, b, x); },
      py::arg("w"), py::arg("b"), py::arg("x"));

  m.def(
      "extract_support_json",
      [](const ProblemData& p, const Eigen::VectorXd& w, double b, const Eigen::VectorXd& u,
         const Eigen::VectorXd& lambda, double sv_tol) {
        return dump(to_json(extract_support(make_point(w, b, u, lambda), p, sv_tol)));
      },
      py::arg("problem"), py::arg("w"), py::arg("b"), py::arg("u"), py::arg("lam"), py::arg("sv_tol") = 1e-8);
  m.def(
      "reconstruct_w", [](const ProblemData& p, const Eigen::VectorXd& lambda) { return reconstruct_w(lambda, p); },
      py::arg("problem"), py::arg("lam"));
  m.def(
      "verify_support_margins_json",
      [](const ProblemData& p, const Eigen::VectorXd& w, double b, const Eigen::VectorXd& u,
         const Eigen::VectorXd& lambda, double C, double gamma, double tol, double sv_tol) {
        return dump(to_json(verify_support_margins(make_point(w, b, u, lambda), p, C, gamma, tol, sv_tol)));
      },
      py::arg("problem"), py::arg("w"), py::arg("b"), py::arg("u"), py::arg("lam"), py::arg("C"),
      py::arg("gamma"), py::arg("tol") = 1e-6, py::arg("sv_tol") = 1e-8);

  m.def(
      "gen_synthetic",
      [](int n_per_class, double separation, double outlier_fraction, std::uint64_t seed, int dim) {
        const Dataset d = gen_synthetic({n_per_class, separation, outlier_fraction, seed, dim});
        return py::make_tuple(d.features, d.labels);
      },
      py::arg("n_per_class") = 10, py::arg("separation") = 4.0, py::arg("outlier_fraction") = 0.0,
      py::arg("seed") = 0, py::arg("dim") = 2, "Two Gaussian blobs: (X, y).");
  m.def(
      "counterexample_data",
      [] {
        const Dataset d = fixtures::counterexample();
        return py::make_tuple(d.features, d.labels);
      },
      "The 3-sample KKT-but-not-P-stationary dataset: (X, y).");
  m.def(
      "counterexample_json",
      [](const std::vector<double>& gammas) { return dump(cmd_counterexample(gammas)); },
      py::arg("gammas") = std::vector<double>{0.4, 4.0, 8.0, 16.0});
  m.def(
      "prox_eval_json",
      [](const std::vector<double>& s, double gamma, double C) { return dump(cmd_prox_eval(s, gamma, C)); },
      py::arg("s"), py::arg("gamma"), py::arg("C"));
}
