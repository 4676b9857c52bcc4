// quermass: compute single quantities, run the verification suites, and
// tabulate first-variation quotients.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "quermass/grassmannian.hpp"
#include "quermass/harness/corpus.hpp"
#include "quermass/harness/io.hpp"
#include "quermass/harness/suite.hpp"
#include "quermass/mixed_volumes.hpp"

using namespace quermass;
using namespace quermass::harness;
using nlohmann::json;

namespace {

constexpr int kExitFailures = 1;
constexpr int kExitConfig = 2;

struct Options {
    std::optional<std::vector<int>> n;
    std::optional<std::vector<int>> j;
    std::optional<std::size_t> samples;
    std::optional<int> dirs;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> phi;
    std::string body = "cube";
    std::string body2 = "ball";
    std::string out;
    std::string csv;
    std::optional<std::string> suite;
    std::string config;
    std::vector<double> eps;
    bool verbose = false;
};

int dim_of(const Options& o) { return o.n && !o.n->empty() ? o.n->front() : 3; }

// A body file, or the name of a bundled body of dimension --n.
ConvexBody resolve_body(const std::string& name_or_path, int n)
{
    if (std::filesystem::exists(name_or_path)) return load_body(name_or_path);
    if (n < 2 || n > 4) throw ConfigError("--n must be 2, 3 or 4 for bundled bodies");
    for (auto& b : bundled_corpus(n))
        if (b.name == name_or_path) return b.body;
    throw ConfigError("body '" + name_or_path + "' is neither a file nor a bundled body name");
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError(path + ": cannot open for writing");
    f << text;
}

void emit_json(const json& j, const Options& o)
{
    const std::string text = j.dump(2) + "\n";
    if (o.out.empty())
        std::cout << text;
    else
        write_file(o.out, text);
}

json estimate_json(const Estimate& e)
{
    return {{"value", e.value}, {"stderr", e.std_error}, {"samples", e.samples}, {"seed", e.seed}};
}

int single_j(const Options& o, int n)
{
    const int j = o.j && !o.j->empty() ? o.j->front() : n - 1;
    if (j < 1 || j > n)
        throw ConfigError("--j " + std::to_string(j) + " is outside 1.." + std::to_string(n));
    return j;
}

int cmd_compute(const std::string& what, const Options& o)
{
    const int n = dim_of(o);
    const ConvexBody K = resolve_body(o.body, n);
    const int dim = K.dim();
    const std::size_t N = o.samples.value_or(100000);
    const std::uint64_t seed = o.seed.value_or(1);
    const OrliczFunction phi = parse_phi(o.phi.value_or("power:1"));
    json out = {{"quantity", what}, {"n", dim}};

    if (what == "phi") {
        const int j = single_j(o, dim);
        const Estimate e = (j == dim || !o.dirs) ? affine_quermassintegral(K, j, N, seed)
                                                  : affine_quermassintegral(K, GrassmannSample(dim, j, N, seed), *o.dirs);
        out["j"] = j;
        out["estimate"] = estimate_json(e);
    } else if (what == "quermass") {
        const ConvexBody L = resolve_body(o.body2, n);
        const int j = single_j(o, dim);
        out["j"] = j;
        out["phi"] = phi_to_json(phi);
        out["estimate"] = estimate_json(orlicz_mixed_affine_quermassintegral(K, L, phi, j, N, seed));
    } else {
        const ConvexBody L = resolve_body(o.body2, n);
        const ConvexBody P =
            K.is_polytope() ? K : ConvexBody::polytope(outer_polytope(K, direction_set(dim, o.dirs.value_or(default_volume_directions(dim)))));
        out["phi"] = phi_to_json(phi);
        out["volume_K"] = volume(P);
        out["V1"] = mixed_volume_V1(P, L);
        out["V_phi"] = orlicz_mixed_volume(P, L, phi);
        out["outer_polytope"] = !K.is_polytope();
    }
    emit_json(out, o);
    return 0;
}

int cmd_verify(const Options& o)
{
    SuiteConfig c = o.config.empty() ? SuiteConfig{} : load_config(o.config);
    if (o.suite) c.suite = *o.suite;
    if (o.n) c.dims = *o.n;
    if (o.j) c.js = *o.j;
    if (o.samples) c.samples = *o.samples;
    if (o.dirs) c.dirs = *o.dirs;
    if (o.seed) c.seed = *o.seed;
    if (o.phi) c.phis = {parse_phi(*o.phi)};
    validate(c);

    const auto start = std::chrono::steady_clock::now();
    const SuiteReport rep = run_suite(c, [&](const CheckResult& r) {
        if (o.verbose || r.status == Status::Fail)
            std::cerr << to_string(r.status) << "  " << r.check_id << "  lhs=" << format_number(r.lhs)
                      << " rhs=" << format_number(r.rhs) << " stderr=" << format_number(r.std_error) << "\n";
    });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    emit_json(rep.json, o);
    if (!o.csv.empty()) write_file(o.csv, report_csv(rep.checks));
    std::cerr << "verify --suite " << c.suite << ": " << rep.checks.size() << " checks, " << rep.passed << " pass, "
              << rep.failed << " fail, " << rep.inconclusive << " inconclusive, " << rep.candidates
              << " candidates (" << secs << " s)\n";
    return rep.failed == 0 ? 0 : kExitFailures;
}

int cmd_sweep(const Options& o)
{
    const int n = dim_of(o);
    const ConvexBody K = resolve_body(o.body, n);
    const ConvexBody L = resolve_body(o.body2, n);
    const int dim = K.dim();
    const int j = o.j && !o.j->empty() ? single_j(o, dim) : dim;
    const OrliczFunction phi = parse_phi(o.phi.value_or("power:1"));
    const std::vector<double> eps = o.eps.empty() ? default_eps_schedule() : o.eps;
    for (std::size_t k = 0; k < eps.size(); ++k)
        if (!(eps[k] > 0.0) || (k > 0 && !(eps[k] < eps[k - 1])))
            throw ConfigError("--eps must be positive and strictly decreasing");

    VariationEstimate v;
    double target = 0.0, target_se = 0.0, value_se = 0.0;
    json extra = json::object();
    if (j == dim) {
        const int dirs = o.dirs.value_or(default_volume_directions(dim));
        v = first_variation_volume(K, L, phi, eps, direction_set(dim, dirs));
        target = orlicz_mixed_volume(K, L, phi);
        extra["dirs"] = dirs;
    } else {
        const std::size_t N = o.samples.value_or(20000);
        const std::uint64_t seed = o.seed.value_or(1);
        const QuermassVariation q = first_variation_quermass(K, L, phi, eps, GrassmannSample(dim, j, N, seed),
                                                             o.dirs.value_or(0));
        v = q.variation;
        target = q.target.value;
        target_se = q.target.std_error;
        value_se = q.value_stderr;
        extra["samples"] = N;
        extra["seed"] = seed;
    }

    json rows = json::array();
    std::string csv = "eps,quotient,richardson\n";
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const double rich = k == 0 ? std::nan("") : v.richardson[k - 1];
        rows.push_back({{"eps", v.epsilons[k]}, {"quotient", v.quotients[k]}, {"richardson", k == 0 ? json(nullptr) : json(rich)}});
        csv += format_number(v.epsilons[k]) + "," + format_number(v.quotients[k]) + "," + (k == 0 ? "" : format_number(rich)) + "\n";
    }
    json out = {{"quantity", j == dim ? "first_variation_volume" : "first_variation_quermass"},
                {"n", dim},
                {"j", j},
                {"phi", phi_to_json(phi)},
                {"rows", rows},
                {"extrapolated", v.extrapolated},
                {"fitted_order", v.fitted_order},
                {"monotone", v.monotone},
                {"value", v.value},
                {"value_stderr", value_se},
                {"target", target},
                {"target_stderr", target_se},
                {"relative_error", std::abs(v.value - target) / std::abs(target)}};
    for (auto it = extra.begin(); it != extra.end(); ++it) out[it.key()] = it.value();
    emit_json(out, o);
    if (!o.csv.empty()) write_file(o.csv, csv);
    return 0;
}

void add_common(CLI::App* cmd, Options& o)
{
    cmd->add_option("--n", o.n, "ambient dimension(s)")->delimiter(',');
    cmd->add_option("--j", o.j, "subspace dimension(s)")->delimiter(',');
    cmd->add_option("--samples", o.samples, "Grassmannian samples");
    cmd->add_option("--dirs", o.dirs, "direction count");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--phi", o.phi, "Orlicz function: JSON or power:P / exp:ALPHA");
    cmd->add_option("--out", o.out, "write the JSON result here instead of stdout");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Orlicz mixed volumes and affine quermassintegrals"};
    app.require_subcommand(1);
    Options o;

    auto* compute = app.add_subcommand("compute", "compute one quantity");
    std::string what;
    compute->add_option("quantity", what, "phi | quermass | mixed-volume")
        ->required()
        ->check(CLI::IsMember({"phi", "quermass", "mixed-volume"}));
    add_common(compute, o);
    compute->add_option("--body", o.body, "body file or bundled name");
    compute->add_option("--body2", o.body2, "second body file or bundled name");

    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", o.suite, "all | orlicz | quermass")
        ->check(CLI::IsMember({"all", "orlicz", "quermass"}));
    verify->add_option("--config", o.config, "suite configuration JSON");
    add_common(verify, o);
    verify->add_option("--csv", o.csv, "CSV summary path");
    verify->add_flag("-v,--verbose", o.verbose, "print every check");

    auto* sweep = app.add_subcommand("sweep", "first-variation quotient table");
    sweep->add_option("--eps", o.eps, "decreasing eps schedule")->delimiter(',');
    add_common(sweep, o);
    sweep->add_option("--body", o.body, "body file or bundled name");
    sweep->add_option("--body2", o.body2, "second body file or bundled name");
    sweep->add_option("--csv", o.csv, "CSV table path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*compute) return cmd_compute(what, o);
        if (*verify) return cmd_verify(o);
        return cmd_sweep(o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailures;
    }
}
