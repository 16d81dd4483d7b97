// rampsvm: train, certify and inspect ramp-loss SVMs from the command line.
//
// Every subcommand prints a JSON report (see docs/report_schema.json).
// Exit codes: 0 success, 2 input/parse error, 3 numerical failure,
// 4 point not certified P-stationary while --expect p-stationary is set.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rampsvm/certify.hpp"
#include "rampsvm/dataset_io.hpp"
#include "rampsvm/error.hpp"
#include "rampsvm/problem.hpp"
#include "rampsvm/report.hpp"
#include "rampsvm/solver.hpp"
#include "rampsvm/support.hpp"
#include "rampsvm/synthetic.hpp"

namespace {

using nlohmann::json;
using namespace rampsvm;

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitNotCertified = 4;

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    std::string_view token = rest.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc() || end != token.data() + token.size() || !std::isfinite(v))
      throw InvalidInput(std::string("--") + what + ": invalid number '" + std::string(token) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void emit(const json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InvalidInput("cannot write '" + out_path + "'");
  out << report.dump(2) << '\n';
}

std::string inputs_digest(const Dataset& data, const json& params) {
  return sha256_hex(dataset_digest(data) + params.dump());
}

struct DataArgs {
  std::string path;
  std::string format = "csv";

  void add(CLI::App* cmd) {
    cmd->add_option("--data", path, "Dataset file")->required();
    cmd->add_option("--format", format, "csv or libsvm")->check(CLI::IsMember({"csv", "libsvm"}));
  }
  Dataset load() const { return parse_dataset(path, parse_format(format)); }
};

int expect_code(const std::string& expect, Verdict verdict) {
  if (expect == "p-stationary" && verdict != Verdict::PStationary) return kExitNotCertified;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramp-loss SVM toolkit: prox evaluation, P-stationarity certification, training"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  std::string expect;
  auto add_expect = [&](CLI::App* cmd) {
    cmd->add_option("--expect", expect, "Exit with code 4 unless the verdict is p-stationary")
        ->check(CLI::IsMember({"p-stationary"}));
  };

  // train
  auto* train = app.add_subcommand("train", "Train with proximal ADMM and certify the result");
  DataArgs train_data;
  train_data.add(train);
  double train_C = 0.0;
  std::optional<double> train_sigma;
  SolverConfig train_cfg;
  std::string train_out;
  bool no_polish = false;
  train->add_option("--C", train_C, "Penalty parameter")->required();
  train->add_option("--sigma", train_sigma, "ADMM penalty (default C/2)");
  train->add_option("--tol", train_cfg.tol, "P-stationarity residual target")->capture_default_str();
  train->add_option("--max-iter", train_cfg.max_iter, "Iteration cap")->capture_default_str();
  train->add_option("--seed", train_cfg.seed, "Seed recorded in the report")->capture_default_str();
  train->add_option("--out", train_out, "Write the report here instead of stdout");
  train->add_flag("--no-polish", no_polish, "Skip the active-pattern polish step");
  add_expect(train);

  // certify
  auto* certify = app.add_subcommand("certify", "Grade a candidate (w, b)");
  DataArgs cert_data;
  cert_data.add(certify);
  std::string cert_w, cert_gammas, cert_lambda, cert_out;
  double cert_b = 0.0, cert_C = 0.0, cert_tol = 1e-6;
  certify->add_option("--w", cert_w, "Comma-separated weights")->required();
  certify->add_option("--b", cert_b, "Bias")->required();
  certify->add_option("--C", cert_C, "Penalty parameter")->required();
  certify->add_option("--gammas", cert_gammas, "Comma-separated gamma probes");
  certify->add_option("--lambda", cert_lambda, "Comma-separated multiplier (default: estimated)");
  certify->add_option("--tol", cert_tol, "Residual tolerance")->capture_default_str();
  certify->add_option("--out", cert_out, "Write the report here instead of stdout");
  add_expect(certify);

  // prox-eval
  auto* prox = app.add_subcommand("prox-eval", "Evaluate the ramp-loss prox componentwise");
  std::string prox_s, prox_out;
  double prox_gamma = 0.0, prox_C = 0.0;
  prox->add_option("--s", prox_s, "Comma-separated arguments")->required();
  prox->add_option("--gamma", prox_gamma, "Prox step")->required();
  prox->add_option("--C", prox_C, "Penalty parameter")->required();
  prox->add_option("--out", prox_out, "Write the report here instead of stdout");

  // support-vectors
  auto* sv = app.add_subcommand("support-vectors",
                                "Train, extract support vectors and check their margins");
  DataArgs sv_data;
  sv_data.add(sv);
  double sv_C = 0.0, sv_sigma = 0.0, sv_tol = 1e-8;
  SolverConfig sv_cfg;
  std::string sv_out;
  sv->add_option("--C", sv_C, "Penalty parameter")->required();
  sv->add_option("--sigma", sv_sigma, "ADMM penalty")->required();
  sv->add_option("--tol", sv_cfg.tol, "P-stationarity residual target")->capture_default_str();
  sv->add_option("--max-iter", sv_cfg.max_iter, "Iteration cap")->capture_default_str();
  sv->add_option("--sv-tol", sv_tol, "Multiplier threshold for support membership")
      ->capture_default_str();
  sv->add_option("--out", sv_out, "Write the report here instead of stdout");
  add_expect(sv);

  // counterexample
  auto* cex = app.add_subcommand("counterexample",
                                 "KKT point that is not P-stationary (3-sample fixture)");
  std::string cex_gammas = "0.4,4,8,16", cex_out;
  cex->add_option("--gammas", cex_gammas, "Comma-separated gamma probes")->capture_default_str();
  cex->add_option("--out", cex_out, "Write the report here instead of stdout");
  add_expect(cex);

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "Write a synthetic two-blob dataset as CSV");
  SyntheticSpec spec;
  std::string gen_out;
  gen->add_option("--n", spec.n_per_class, "Samples per class")->required();
  gen->add_option("--sep", spec.separation, "Distance between blob centres")->required();
  gen->add_option("--outliers", spec.outlier_fraction, "Fraction of relocated samples")->required();
  gen->add_option("--seed", spec.seed, "Random seed")->required();
  gen->add_option("--dim", spec.dim, "Feature dimension")->capture_default_str();
  gen->add_option("--out", gen_out, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (train->parsed()) {
      const Dataset data = train_data.load();
      train_cfg.C = train_C;
      train_cfg.sigma = train_sigma.value_or(train_C / 2.0);
      train_cfg.polish = !no_polish;
      const ProblemData problem = build_problem(data);
      const SolveResult r = train_admm(problem, train_cfg);
      const json params = {{"C", train_cfg.C},        {"sigma", train_cfg.sigma},
                           {"tol", train_cfg.tol},    {"max_iter", train_cfg.max_iter},
                           {"polish", train_cfg.polish}};
      emit(make_report("train", inputs_digest(data, params), train_cfg.seed, &problem,
                       to_json(r, train_cfg)),
           train_out);
      if (r.status == SolveStatus::Diverged) return kExitNumerical;
      return expect_code(expect, r.status == SolveStatus::Converged ? Verdict::PStationary
                                                                    : Verdict::Neither);
    }

    if (certify->parsed()) {
      const Dataset data = cert_data.load();
      const ProblemData problem = build_problem(data);
      const Eigen::VectorXd w = to_vector(parse_list(cert_w, "w"));
      const std::vector<double> gammas =
          cert_gammas.empty() ? default_gammas(problem, cert_C) : parse_list(cert_gammas, "gammas");
      const Grade g = cert_lambda.empty()
                          ? grade_point(w, cert_b, problem, cert_C, gammas, cert_tol)
                          : grade_point(w, cert_b, to_vector(parse_list(cert_lambda, "lambda")),
                                        problem, cert_C, gammas, cert_tol);
      json params = {{"w", parse_list(cert_w, "w")}, {"b", cert_b},   {"C", cert_C},
                     {"gammas", gammas},             {"tol", cert_tol}};
      if (!cert_lambda.empty()) params["lambda"] = parse_list(cert_lambda, "lambda");
      emit(make_report("certify", inputs_digest(data, params), std::nullopt, &problem, to_json(g)),
           cert_out);
      return expect_code(expect, g.verdict);
    }

    if (prox->parsed()) {
      const std::vector<double> s = parse_list(prox_s, "s");
      emit(cmd_prox_eval(s, prox_gamma, prox_C), prox_out);
      return 0;
    }

    if (sv->parsed()) {
      const Dataset data = sv_data.load();
      const ProblemData problem = build_problem(data);
      sv_cfg.C = sv_C;
      sv_cfg.sigma = sv_sigma;
      const SolveResult r = train_admm(problem, sv_cfg);
      const Verdict verdict =
          r.status == SolveStatus::Converged ? Verdict::PStationary : Verdict::Neither;
      const SupportSet support = extract_support(r.point, problem, sv_tol, verdict);
      json result = {{"solve", to_json(r, sv_cfg)},
                     {"sv_tol", sv_tol},
                     {"support", to_json(support)},
                     {"margin_check", nullptr}};
      const double gamma = sv_cfg.gamma();
      if (gamma * sv_C >= 2.0 && verdict == Verdict::PStationary) {
        result["margin_check"] =
            to_json(verify_support_margins(r.point, problem, sv_C, gamma, sv_cfg.tol, sv_tol));
      }
      const json params = {{"C", sv_C},          {"sigma", sv_sigma}, {"tol", sv_cfg.tol},
                           {"max_iter", sv_cfg.max_iter}, {"sv_tol", sv_tol}};
      emit(make_report("support-vectors", inputs_digest(data, params), sv_cfg.seed, &problem,
                       std::move(result)),
           sv_out);
      if (r.status == SolveStatus::Diverged) return kExitNumerical;
      return expect_code(expect, verdict);
    }

    if (cex->parsed()) {
      const json report = cmd_counterexample(parse_list(cex_gammas, "gammas"));
      emit(report, cex_out);
      const std::string v = report["result"]["verdict"].get<std::string>();
      return expect_code(expect, v == "P_STATIONARY" ? Verdict::PStationary : Verdict::KktOnly);
    }

    if (gen->parsed()) {
      const Dataset data = gen_synthetic(spec);
      write_csv(gen_out, data);
      const json params = {{"n_per_class", spec.n_per_class}, {"separation", spec.separation},
                           {"outlier_fraction", spec.outlier_fraction}, {"dim", spec.dim}};
      const json result = {{"path", gen_out},
                           {"m", data.m()},
                           {"n", data.n()},
                           {"outliers", outlier_count(spec)},
                           {"dataset_digest", dataset_digest(data)}};
      emit(make_report("gen-data", sha256_hex(params.dump()), spec.seed, nullptr, result), "");
      return 0;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
