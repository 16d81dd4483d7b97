#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rampsvm/certify.hpp"
#include "rampsvm/problem.hpp"
#include "rampsvm/prox.hpp"
#include "rampsvm/solver.hpp"
#include "rampsvm/support.hpp"

namespace rampsvm {

std::string_view version();

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

/// Digest of a dataset's values in a fixed binary layout, independent of the
/// text it was parsed from.
std::string dataset_digest(const Dataset& data);

nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const KktReport& k);
nlohmann::json to_json(const PrimalDualPoint& p);
nlohmann::json to_json(const Grade& g);
nlohmann::json to_json(const SolveResult& r, const SolverConfig& config);
nlohmann::json to_json(const SupportSet& s);
nlohmann::json to_json(const MarginCheck& m);
nlohmann::json to_json(const ProxSet& p);

/// {m, n, full_column_rank, lambda_h (or null)}.
nlohmann::json problem_summary(const ProblemData& problem);

/// Envelope shared by every command:
/// {command, version, inputs_digest, seed, problem?, result}.
nlohmann::json make_report(std::string_view command, std::string_view inputs_digest,
                           std::optional<std::uint64_t> seed, const ProblemData* problem,
                           nlohmann::json result);

/// Runs the KKT and per-gamma P-stationarity checks on the embedded
/// counterexample at C = 0.25. Contains no randomness or timestamps.
nlohmann::json cmd_counterexample(const std::vector<double>& gammas = {0.4, 4.0, 8.0, 16.0});

/// Report payload for a prox evaluation.
nlohmann::json cmd_prox_eval(std::span<const double> s, double gamma, double C);

}  // namespace rampsvm
