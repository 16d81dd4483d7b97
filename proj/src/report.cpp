#include "rampsvm/report.hpp"

#include <cstring>
#include <string>

#include <openssl/evp.h>

#include "rampsvm/error.hpp"
#include "rampsvm/fixtures.hpp"
#include "rampsvm/ramp_loss.hpp"

#ifndef RAMPSVM_VERSION
#define RAMPSVM_VERSION "0.0.0"
#endif

namespace rampsvm {

using nlohmann::json;

std::string_view version() { return RAMPSVM_VERSION; }

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw NumericalError("sha256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string dataset_digest(const Dataset& data) {
  std::string bytes;
  auto append = [&bytes](const auto& value) {
    char buf[sizeof(value)];
    std::memcpy(buf, &value, sizeof(value));
    bytes.append(buf, sizeof(value));
  };
  append(static_cast<std::int64_t>(data.m()));
  append(static_cast<std::int64_t>(data.n()));
  for (Eigen::Index i = 0; i < data.m(); ++i) {
    append(data.labels(i));
    for (Eigen::Index j = 0; j < data.n(); ++j) append(data.features(i, j));
  }
  return sha256_hex(bytes);
}

namespace {

json vec(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

json to_json(const Certificate& c) {
  return {{"gamma", c.gamma},
          {"r_grad", c.r_grad},
          {"r_y", c.r_y},
          {"r_feas", c.r_feas},
          {"r_prox", c.r_prox},
          {"worst_prox_index", c.worst_prox_index},
          {"prox_distance", vec(c.prox_distance)},
          {"max_residual", c.max_residual()},
          {"verdict", to_string(c.verdict)}};
}

json to_json(const KktReport& k) {
  return {{"r_grad", k.r_grad},
          {"r_y", k.r_y},
          {"r_feas", k.r_feas},
          {"r_mult", k.r_mult},
          {"worst_mult_index", k.worst_mult_index},
          {"max_residual", k.max_residual()},
          {"satisfied", k.satisfied}};
}

json to_json(const PrimalDualPoint& p) {
  return {{"w", vec(p.w)}, {"b", p.b}, {"u", vec(p.u)}, {"lambda", vec(p.lambda)}};
}

json to_json(const Grade& g) {
  json certs = json::array();
  for (const auto& c : g.per_gamma) certs.push_back(to_json(c));
  return {{"verdict", to_string(g.verdict)},
          {"best_gamma", g.certificate().gamma},
          {"multiplier_residual", g.multiplier_residual},
          {"point", to_json(g.point)},
          {"kkt", to_json(g.kkt)},
          {"certificates", std::move(certs)}};
}

json to_json(const SolveResult& r, const SolverConfig& config) {
  return {{"status", to_string(r.status)},
          {"iterations", r.iterations},
          {"objective", r.objective},
          {"polished", r.polished},
          {"message", r.message},
          {"config",
           {{"C", config.C},
            {"sigma", config.sigma},
            {"gamma", config.gamma()},
            {"gamma_c", config.gamma() * config.C},
            {"tol", config.tol},
            {"max_iter", config.max_iter},
            {"polish", config.polish}}},
          {"point", to_json(r.point)},
          {"certificate", to_json(r.certificate)}};
}

json to_json(const SupportSet& s) {
  return {{"indices", s.indices},
          {"lambdas", s.lambdas},
          {"margins", s.margins},
          {"source_verdict", to_string(s.source_verdict)}};
}

json to_json(const MarginCheck& m) {
  return {{"holds", m.holds}, {"max_deviation", m.max_deviation}, {"support", to_json(m.support)}};
}

json to_json(const ProxSet& p) {
  return {{"values", std::vector<double>(p.values().begin(), p.values().end())}, {"tie", p.tie()}};
}

json problem_summary(const ProblemData& problem) {
  json out = {{"m", problem.m()},
              {"n", problem.n()},
              {"full_column_rank", problem.full_column_rank()},
              {"lambda_h", nullptr}};
  if (problem.lambda_h) out["lambda_h"] = *problem.lambda_h;
  return out;
}

json make_report(std::string_view command, std::string_view inputs_digest,
                 std::optional<std::uint64_t> seed, const ProblemData* problem, json result) {
  json out = {{"command", command},
              {"version", version()},
              {"inputs_digest", inputs_digest}};
  if (seed) out["seed"] = *seed;
  if (problem) out["problem"] = problem_summary(*problem);
  out["result"] = std::move(result);
  return out;
}

json cmd_counterexample(const std::vector<double>& gammas) {
  if (gammas.empty()) throw InvalidInput("counterexample: gamma list is empty");
  constexpr double kTol = 1e-6;
  const double C = fixtures::kCounterexampleC;
  const ProblemData problem = build_problem(fixtures::counterexample());
  const PrimalDualPoint point = fixtures::counterexample_kkt_point();

  const KktReport kkt = check_kkt(point, problem, C, kTol);
  json certs = json::array();
  bool any_pstationary = false;
  for (double gamma : gammas) {
    const Certificate c = check_pstationary(point, problem, C, gamma, kTol);
    any_pstationary = any_pstationary || c.verdict == Verdict::PStationary;
    certs.push_back(to_json(c));
  }
  const Verdict verdict = any_pstationary ? Verdict::PStationary
                          : kkt.satisfied ? Verdict::KktOnly
                                          : Verdict::Neither;

  json result = {{"C", C},
                 {"tol", kTol},
                 {"gammas", gammas},
                 {"point", to_json(point)},
                 {"objective", objective(point.w, point.b, problem.data, C)},
                 {"kkt", to_json(kkt)},
                 {"certificates", std::move(certs)},
                 {"verdict", to_string(verdict)}};
  const json params = {{"C", C}, {"gammas", gammas}};
  const std::string digest = sha256_hex(dataset_digest(problem.data) + params.dump());
  return make_report("counterexample", digest, std::nullopt, &problem, std::move(result));
}

json cmd_prox_eval(std::span<const double> s, double gamma, double C) {
  const ProxParams params(gamma, C);
  const Eigen::Map<const Eigen::VectorXd> sv(s.data(), static_cast<Eigen::Index>(s.size()));
  json prox = json::array();
  for (const auto& p : prox_vector(sv, params)) prox.push_back(to_json(p));
  json result = {{"gamma", gamma},
                 {"C", C},
                 {"gamma_c", params.gamma_c()},
                 {"regime", params.gamma_c() < 2.0 ? "moderate" : "large"},
                 {"s", std::vector<double>(s.begin(), s.end())},
                 {"prox", std::move(prox)}};
  const json params_json = {{"s", result["s"]}, {"gamma", gamma}, {"C", C}};
  return make_report("prox-eval", sha256_hex(params_json.dump()), std::nullopt, nullptr,
                     std::move(result));
}

}  // namespace rampsvm
