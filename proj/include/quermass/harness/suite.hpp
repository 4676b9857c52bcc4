#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quermass/harness/checks.hpp"
#include "quermass/orlicz.hpp"

namespace quermass::harness {

inline constexpr const char* kReportSchema = "quermass-report/1";

struct SuiteConfig {
    std::string suite = "all";                ///< all | orlicz | quermass
    std::vector<int> dims = {2, 3, 4};
    std::vector<int> js;                      ///< empty: every 1 <= j <= n
    std::size_t samples = 4000;               ///< Grassmannian samples per estimator
    std::size_t samples_outer = 1000;         ///< for checks needing per-sample outer polytopes
    std::size_t samples_sl = 20000;           ///< per side of the SL(n) comparisons
    int dirs = 8192;                          ///< volume-level directions, n <= 3
    int dirs_4d = 2048;                       ///< volume-level directions, n = 4
    int sample_dirs = 0;                      ///< per-sample directions (0: default for j)
    std::uint64_t seed = 20240601;
    std::vector<double> eps = default_eps_schedule();
    std::vector<double> combination_eps = {0.3, 1.0};
    std::vector<OrliczFunction> phis = {make_power(1.0), make_power(2.0), make_normalized_exp(1.0)};
    std::size_t solver_tuples = 10000;
    std::size_t projection_pairs = 1000;
    int max_escalations = 2;                  ///< 10x re-runs of an inconclusive sampled check
    Tolerances tol;
    std::vector<std::string> body_paths;      ///< added to the corpus of their dimension
};

/// Fields absent from `j` keep their defaults. Throws ConfigError naming
/// `source` and the field.
SuiteConfig config_from_json(const nlohmann::json& j, const std::string& source);
SuiteConfig load_config(const std::string& path);
nlohmann::json config_to_json(const SuiteConfig& c);
/// Throws ConfigError for infeasible settings (j > n, empty or non-decreasing
/// eps, non-positive counts, unknown suite).
void validate(const SuiteConfig& c);

struct SuiteReport {
    nlohmann::json json;              ///< schema, config, summary, checks sorted by check_id
    std::vector<CheckResult> checks;  ///< sorted by check_id
    std::size_t passed = 0, failed = 0, inconclusive = 0, candidates = 0;
};

/// Runs every registered check of the selected suite. `progress` (optional)
/// sees each result as it completes.
SuiteReport run_suite(const SuiteConfig& c, const std::function<void(const CheckResult&)>& progress = {});

/// One row per check: check_id,kind,status,lhs,rhs,margin,stderr,abs_tol,candidate.
std::string report_csv(const std::vector<CheckResult>& checks);

/// Shortest round-trip decimal form of x ("nan"/"inf" for non-finite values).
std::string format_number(double x);

} // namespace quermass::harness
