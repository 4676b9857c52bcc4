#include "quermass/harness/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "quermass/harness/io.hpp"
#include "quermass/mixed_volumes.hpp"
#include "quermass/unit_ball.hpp"

namespace quermass::harness {

using nlohmann::json;

namespace {

double scale_of(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

CheckResult base(CheckKind kind, double lhs, double rhs, double se, double abs_tol, const Tolerances& tol)
{
    CheckResult r;
    r.kind = kind;
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = lhs - rhs;
    r.std_error = se;
    r.abs_tol = abs_tol;
    r.sigmas = tol.sigmas;
    r.noise_cap = tol.noise_cap;
    r.candidate_sigmas = tol.candidate;
    return r;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

OrliczFunction random_phi(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) < 0.5) return make_power(1.0 + 4.0 * u(rng));
    return make_normalized_exp(0.1 + 4.9 * u(rng));
}

Vec random_unit(int d, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    for (;;) {
        Vec v(d);
        for (int i = 0; i < d; ++i) v(i) = g(rng);
        const double nv = v.norm();
        if (nv > 1e-6) return v / nv;
    }
}

// Per-sample directions: the volume-level count on the single point of G(n, n),
// the sample default otherwise.
DirectionSet sample_dirs(const GrassmannSample& s, int dirs)
{
    const int j = s.dim();
    if (dirs <= 0)
        dirs = (j == s.ambient_dim() && s.size() == 1) ? default_volume_directions(j) : default_sample_directions(j);
    return direction_set(j, dirs);
}

MeanVector means_of(const std::vector<std::vector<double>>& cols)
{
    std::vector<const std::vector<double>*> ptrs;
    for (const auto& c : cols) ptrs.push_back(&c);
    return sample_means(ptrs);
}

json sample_config(const GrassmannSample& s)
{
    return {{"n", s.ambient_dim()}, {"j", s.dim()}, {"samples", s.size()}, {"seed", s.seed()}};
}

double require_volume(const ConvexBody& K, const char* what)
{
    if (K.is_oracle()) throw InvalidInput(std::string(what) + ": bodies need an exact volume");
    return volume(K);
}

} // namespace

std::string to_string(Status s)
{
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    default: return "inconclusive";
    }
}

std::string to_string(CheckKind k)
{
    switch (k) {
    case CheckKind::Inequality: return "inequality";
    case CheckKind::Identity: return "identity";
    default: return "probe";
    }
}

Status decide(const CheckResult& r)
{
    const double band = std::max(r.abs_tol, r.sigmas * r.std_error);
    if (r.kind == CheckKind::Probe) return r.margin >= -band ? Status::Pass : Status::Inconclusive;
    if (!std::isfinite(r.lhs) || !std::isfinite(r.rhs) || !std::isfinite(r.std_error)) return Status::Fail;
    const double diff = r.lhs - r.rhs;
    // A clear excess of lhs over rhs settles an inequality however noisy the
    // estimate; only passes that lean on the stderr band are noise capped.
    if (r.kind == CheckKind::Inequality && diff >= 0.0 && diff > r.sigmas * r.std_error) return Status::Pass;
    const bool within = r.kind == CheckKind::Inequality ? diff >= -band : std::abs(diff) <= band;
    if (!within) return Status::Fail;
    if (r.std_error > r.noise_cap * std::max(std::abs(r.lhs), std::abs(r.rhs))) return Status::Inconclusive;
    return Status::Pass;
}

bool is_candidate(const CheckResult& r)
{
    return r.kind == CheckKind::Probe && r.margin < -r.candidate_sigmas * r.std_error &&
           r.margin < -r.abs_tol;
}

CheckResult inequality(double lhs, double rhs, double se, double abs_tol, const Tolerances& tol)
{
    CheckResult r = base(CheckKind::Inequality, lhs, rhs, se, abs_tol, tol);
    r.status = decide(r);
    return r;
}

CheckResult identity(double lhs, double rhs, double se, double abs_tol, const Tolerances& tol)
{
    CheckResult r = base(CheckKind::Identity, lhs, rhs, se, abs_tol, tol);
    r.status = decide(r);
    return r;
}

CheckResult probe(double margin, double se, double abs_tol, const Tolerances& tol)
{
    CheckResult r = base(CheckKind::Probe, margin, 0.0, se, abs_tol, tol);
    r.status = decide(r);
    r.candidate = is_candidate(r);
    return r;
}

CheckResult as_identity(const CheckResult& r, const Tolerances& tol)
{
    CheckResult out = identity(r.lhs, r.rhs, r.std_error, r.abs_tol, tol);
    out.check_id = r.check_id;
    out.config = r.config;
    return out;
}

json to_json(const CheckResult& r)
{
    auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
    return {{"check_id", r.check_id},
            {"kind", to_string(r.kind)},
            {"status", to_string(r.status)},
            {"lhs", num(r.lhs)},
            {"rhs", num(r.rhs)},
            {"margin", num(r.margin)},
            {"stderr", num(r.std_error)},
            {"abs_tol", r.abs_tol},
            {"sigmas", r.sigmas},
            {"noise_cap", r.noise_cap},
            {"candidate_sigmas", r.candidate_sigmas},
            {"candidate", r.candidate},
            {"config", r.config}};
}

CheckResult check_result_from_json(const json& j)
{
    auto num = [&](const char* key) {
        const auto& v = j.at(key);
        return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
    };
    CheckResult r;
    r.check_id = j.at("check_id").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    r.kind = kind == "inequality" ? CheckKind::Inequality : kind == "identity" ? CheckKind::Identity : CheckKind::Probe;
    const auto status = j.at("status").get<std::string>();
    r.status = status == "pass" ? Status::Pass : status == "fail" ? Status::Fail : Status::Inconclusive;
    r.lhs = num("lhs");
    r.rhs = num("rhs");
    r.margin = num("margin");
    r.std_error = num("stderr");
    r.abs_tol = j.at("abs_tol").get<double>();
    r.sigmas = j.at("sigmas").get<double>();
    r.noise_cap = j.at("noise_cap").get<double>();
    r.candidate_sigmas = j.at("candidate_sigmas").get<double>();
    r.candidate = j.at("candidate").get<bool>();
    r.config = j.at("config");
    return r;
}

// ---- scalar and volume level -------------------------------------------

CheckResult check_solver_residuals(std::size_t tuples, std::uint64_t seed)
{
    auto rng = sample_stream(seed, 0);
    double worst = 0.0;
    for (std::size_t i = 0; i < tuples; ++i) {
        const OrliczFunction phi = random_phi(rng);
        const double hK = log_uniform(rng, 1e-2, 1e2), hL = log_uniform(rng, 1e-2, 1e2);
        const CombinationWeights w(log_uniform(rng, 1e-2, 1e2), log_uniform(rng, 1e-2, 1e2));
        const double lam = solve_orlicz_support(hK, hL, w, phi);
        const double res = w.a * phi(hK / lam) + w.b * phi(hL / lam) - 1.0;
        worst = std::max(worst, std::abs(res));
    }
    CheckResult r = identity(worst, 0.0, 0.0, 1e-12, {});
    r.config = {{"tuples", tuples}, {"seed", seed}};
    return r;
}

CheckResult check_closed_forms(std::size_t tuples, std::uint64_t seed)
{
    auto rng = sample_stream(seed, 1);
    std::uniform_real_distribution<double> pdist(1.0, 5.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < tuples; ++i) {
        const double hK = log_uniform(rng, 1e-2, 1e2), hL = log_uniform(rng, 1e-2, 1e2);
        const CombinationWeights w(log_uniform(rng, 1e-2, 1e2), log_uniform(rng, 1e-2, 1e2));
        const double p = pdist(rng);
        const double mink = w.a * hK + w.b * hL;
        const double firey = std::pow(w.a * std::pow(hK, p) + w.b * std::pow(hL, p), 1.0 / p);
        worst = std::max(worst, std::abs(solve_orlicz_support(hK, hL, w, make_power(1.0)) - mink) / mink);
        worst = std::max(worst, std::abs(solve_orlicz_support(hK, hL, w, make_power(p)) - firey) / firey);
    }
    CheckResult r = identity(worst, 0.0, 0.0, 1e-10, {});
    r.config = {{"tuples", tuples}, {"seed", seed}, {"relative", true}};
    return r;
}

CheckResult check_orlicz_class(const OrliczFunction& phi)
{
    const OrliczClassReport rep = class_report(phi);
    const double worst = std::max({std::abs(rep.value_at_zero), std::abs(rep.value_at_one - 1.0),
                                   rep.monotonicity_violation, rep.convexity_violation});
    CheckResult r = identity(worst, 0.0, 0.0, 1e-12, {});
    r.config = {{"phi", phi_to_json(phi)}, {"derivative_error", rep.derivative_error}};
    return r;
}

CheckResult check_projection_lemma(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                   double eps, int j, std::size_t pairs, std::uint64_t seed)
{
    const int n = K.dim();
    require(L.dim() == n && j >= 1 && j <= n, "check_projection_lemma: need 1 <= j <= n");
    double worst = 0.0;
    for (std::size_t i = 0; i < pairs; ++i) {
        auto rng = sample_stream(seed, i);
        const Subspace xi = sample_haar(n, j, rng);
        worst = std::max(worst, orlicz_projection_discrepancy(K, L, eps, phi, xi, {random_unit(j, rng)}));
    }
    CheckResult r = identity(worst, 0.0, 0.0, 1e-9, {});
    r.config = {{"phi", phi_to_json(phi)}, {"eps", eps}, {"j", j}, {"pairs", pairs}, {"seed", seed}};
    return r;
}

CheckResult check_hausdorff_continuity(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                       int dirs)
{
    const DirectionSet D = direction_set(K.dim(), dirs);
    std::vector<double> dist;
    double constant = 0.0;
    int increases = 0;
    for (int k = 1; k <= 6; ++k) {
        const double eps = std::pow(10.0, -k);
        const double d = hausdorff_distance(K, orlicz_sum(K, L, {1.0, eps}, phi), D);
        if (!dist.empty() && d > dist.back() * (1.0 + 1e-12) + 1e-15) ++increases;
        dist.push_back(d);
        constant = std::max(constant, d / eps);
    }
    CheckResult r = identity(increases, 0.0, 0.0, 0.0, {});
    r.config = {{"phi", phi_to_json(phi)}, {"dirs", dirs}, {"distances", dist}, {"lipschitz_constant", constant}};
    return r;
}

CheckResult check_sum_homogeneity(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                  double c, int dirs)
{
    const DirectionSet D = direction_set(K.dim(), dirs);
    const ConvexBody s1 = orlicz_sum(K, L, {}, phi);
    const ConvexBody s2 = orlicz_sum(dilate(K, c), dilate(L, c), {}, phi);
    double worst = 0.0, top = 0.0;
    for (const auto& u : D) {
        const double ref = c * s1.h(u);
        worst = std::max(worst, std::abs(s2.h(u) - ref));
        top = std::max(top, ref);
    }
    CheckResult r = identity(worst, 0.0, 0.0, 1e-10 * std::max(1.0, top), {});
    r.config = {{"phi", phi_to_json(phi)}, {"c", c}, {"dirs", dirs}};
    return r;
}

CheckResult check_surface_closure(const ConvexBody& K)
{
    const SurfaceMeasure S = surface_area_measure(K);
    double total = 0.0;
    for (const auto& a : S.atoms) total += a.weight;
    CheckResult r = identity(S.closure().norm(), 0.0, 0.0, 1e-9 * std::max(1.0, total), {});
    r.config = {{"atoms", S.atoms.size()}, {"total_area", total}};
    return r;
}

CheckResult check_mixed_volume_self(const ConvexBody& K, const OrliczFunction& phi)
{
    const double lhs = orlicz_mixed_volume(K, K, phi), rhs = volume(K);
    CheckResult r = identity(lhs, rhs, 0.0, 1e-10 * scale_of(lhs, rhs), {});
    r.config = {{"phi", phi_to_json(phi)}};
    return r;
}

CheckResult check_mixed_volume_dilate(const ConvexBody& K, const OrliczFunction& phi, double lambda)
{
    const double lhs = orlicz_mixed_volume(K, dilate(K, lambda), phi), rhs = phi(lambda) * volume(K);
    CheckResult r = identity(lhs, rhs, 0.0, 1e-10 * scale_of(lhs, rhs), {});
    r.config = {{"phi", phi_to_json(phi)}, {"lambda", lambda}};
    return r;
}

CheckResult check_lp_volume_pipeline(const ConvexBody& K, const ConvexBody& L, double p)
{
    const double lhs = lp_mixed_volume(K, L, p), rhs = orlicz_mixed_volume(K, L, make_power(p));
    CheckResult r = identity(lhs, rhs, 0.0, 1e-12 * scale_of(lhs, rhs), {});
    r.config = {{"p", p}};
    return r;
}

CheckResult check_minkowski_volume(const ConvexBody& K, const ConvexBody& L)
{
    const int n = K.dim();
    const double lhs = std::pow(mixed_volume_V1(K, L), n);
    const double rhs = std::pow(volume(K), n - 1) * require_volume(L, "check_minkowski_volume");
    CheckResult r = inequality(lhs, rhs, 0.0, 1e-9 * scale_of(lhs, rhs), {});
    r.config = json::object();
    return r;
}

CheckResult check_lp_minkowski_volume(const ConvexBody& K, const ConvexBody& L, double p)
{
    const int n = K.dim();
    const double lhs = std::pow(lp_mixed_volume(K, L, p), n);
    const double rhs = std::pow(volume(K), n - p) * std::pow(require_volume(L, "check_lp_minkowski_volume"), p);
    CheckResult r = inequality(lhs, rhs, 0.0, 1e-9 * scale_of(lhs, rhs), {});
    r.config = {{"p", p}};
    return r;
}

CheckResult check_orlicz_minkowski_volume(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi)
{
    const int n = K.dim();
    const double vK = volume(K), vL = require_volume(L, "check_orlicz_minkowski_volume");
    const double lhs = orlicz_mixed_volume(K, L, phi) / vK;
    const double rhs = phi(std::pow(vL / vK, 1.0 / n));
    CheckResult r = inequality(lhs, rhs, 0.0, 1e-9 * scale_of(lhs, rhs), {});
    r.config = {{"phi", phi_to_json(phi)}};
    return r;
}

CheckResult check_brunn_minkowski_volume(const ConvexBody& K, const ConvexBody& L, int dirs)
{
    const int n = K.dim();
    const DirectionSet D = augmented_directions(direction_set(n, dirs), {&K, &L});
    const double vS = outer_polytope(orlicz_sum(K, L, {}, make_power(1.0)), D).volume();
    const double lhs = std::pow(vS, 1.0 / n);
    const double rhs = std::pow(require_volume(K, "check_brunn_minkowski_volume"), 1.0 / n) +
                       std::pow(require_volume(L, "check_brunn_minkowski_volume"), 1.0 / n);
    CheckResult r = inequality(lhs, rhs, 0.0, 1e-9 * scale_of(lhs, rhs), {});
    r.config = {{"dirs", dirs}};
    return r;
}

CheckResult check_orlicz_bm_volume(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                   double eps, int dirs)
{
    const int n = K.dim();
    const DirectionSet D = augmented_directions(direction_set(n, dirs), {&K, &L});
    const double vS = outer_polytope(orlicz_sum(K, L, {1.0, eps}, phi), D).volume();
    const double vK = require_volume(K, "check_orlicz_bm_volume"), vL = require_volume(L, "check_orlicz_bm_volume");
    const double rhs = phi(std::pow(vK / vS, 1.0 / n)) + eps * phi(std::pow(vL / vS, 1.0 / n));
    CheckResult r = inequality(1.0, rhs, 0.0, 1e-9, {});
    r.config = {{"phi", phi_to_json(phi)}, {"eps", eps}, {"dirs", dirs}};
    return r;
}

CheckResult check_first_variation_volume(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                         const std::vector<double>& eps, int dirs, const Tolerances& tol)
{
    const VariationEstimate v = first_variation_volume(K, L, phi, eps, direction_set(K.dim(), dirs));
    const double rhs = K.is_polytope() || &K != &L ? orlicz_mixed_volume(K, L, phi) : volume(K);
    CheckResult r = identity(v.value, rhs, 0.0, tol.fv_volume * std::abs(rhs), tol);
    r.config = {{"phi", phi_to_json(phi)},       {"dirs", dirs},
                {"eps", v.epsilons},                    {"quotients", v.quotients},
                {"richardson", v.richardson},    {"fitted_order", v.fitted_order},
                {"monotone", v.monotone},        {"relative_error", std::abs(v.value - rhs) / std::abs(rhs)}};
    return r;
}

double limit_ratio(const OrliczFunction& phi, int j, double t)
{
    require(j >= 1 && t > 0.0 && t < 1.0, "limit_ratio: need j >= 1 and 0 < t < 1");
    const double s = 1.0 - t;
    const double log_x = std::log1p(-s) / j; // log t^{1/j}
    double denom = 0.0;
    switch (phi.family()) {
    case OrliczFunction::Family::Power:
        denom = -std::expm1(phi.parameter() * log_x);
        break;
    case OrliczFunction::Family::Exp: {
        const double a = phi.parameter();
        denom = -std::expm1(a * std::expm1(log_x)) / -std::expm1(-a);
        break;
    }
    default:
        denom = 1.0 - phi(std::exp(log_x));
    }
    // Leading term of the series when the denominator is lost to rounding.
    if (!(denom > 1e3 * std::numeric_limits<double>::min())) return j / phi.left_derivative_at_one();
    return s / denom;
}

CheckResult check_limit_ratio(const OrliczFunction& phi, int j)
{
    std::vector<double> series;
    for (int k = 1; k <= 6; ++k) series.push_back(limit_ratio(phi, j, 1.0 - std::pow(10.0, -k)));
    const double rhs = j / phi.left_derivative_at_one();
    CheckResult r = identity(series.back(), rhs, 0.0, 1e-4, {});
    r.config = {{"phi", phi_to_json(phi)}, {"j", j}, {"t", 1.0 - 1e-6}, {"series", series}};
    return r;
}

// ---- affine quermassintegrals ------------------------------------------

GrassmannSample make_sample(int n, int j, std::size_t samples, std::uint64_t seed)
{
    require(j >= 1 && j <= n, "make_sample: need 1 <= j <= n");
    return j == n ? GrassmannSample::full(n) : GrassmannSample(n, j, samples, seed);
}

CheckResult check_ball_law(double r, const GrassmannSample& s, const Tolerances& tol)
{
    const int n = s.ambient_dim(), j = s.dim();
    const Estimate e = affine_quermassintegral(ConvexBody::ball(r, n), s);
    const double rhs = omega(n) * std::pow(r, j);
    CheckResult c = identity(e.value, rhs, e.std_error, tol.atom * rhs, tol);
    c.config = sample_config(s);
    c.config["radius"] = r;
    return c;
}

CheckResult check_homogeneity(const ConvexBody& K, double c, const GrassmannSample& s, const Tolerances& tol)
{
    const int n = s.ambient_dim(), j = s.dim();
    const ConvexBody cK = dilate(K, c);
    const DirectionSet D = sample_dirs(s, 0);
    const auto cols = sample_columns(s, 2, [&](const Subspace& xi, double* out) {
        out[0] = std::pow(projected_volume(cK, xi, D), -n);
        out[1] = std::pow(projected_volume(K, xi, D), -n);
    });
    const double w = omega(n) / omega(j), cj = std::pow(c, j);
    const MeanVector m = means_of(cols);
    const Propagated d = propagate(m, [&](const Eigen::VectorXd& x) {
        return w * std::pow(x(0), -1.0 / n) - cj * w * std::pow(x(1), -1.0 / n);
    });
    const double lhs = w * std::pow(m.mean(0), -1.0 / n), rhs = cj * w * std::pow(m.mean(1), -1.0 / n);
    CheckResult r = identity(lhs, rhs, d.std_error, tol.atom * scale_of(lhs, rhs), tol);
    r.config = sample_config(s);
    r.config["c"] = c;
    return r;
}

CheckResult check_full_dim_volume(const ConvexBody& K, const GrassmannSample& s, const Tolerances& tol)
{
    require(s.dim() == s.ambient_dim(), "check_full_dim_volume: need a sample of G(n, n)");
    const Estimate e = affine_quermassintegral(K, s);
    const double rhs = require_volume(K, "check_full_dim_volume");
    CheckResult r = identity(e.value, rhs, e.std_error, tol.atom * scale_of(e.value, rhs), tol);
    r.config = sample_config(s);
    return r;
}

CheckResult check_degeneration(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                               const GrassmannSample& s, const Tolerances& tol)
{
    const int n = s.ambient_dim();
    require(s.dim() == n, "check_degeneration: need a sample of G(n, n)");
    const Estimate e = orlicz_mixed_affine_quermassintegral(K, L, phi, s);
    const double lhs = std::pow(e.value, -n);
    const double rhs = orlicz_mixed_volume(K, L, phi) * std::pow(volume(K), -n - 1);
    const double se = n * lhs / e.value * e.std_error;
    CheckResult r = identity(lhs, rhs, se, tol.atom * scale_of(lhs, rhs), tol);
    r.config = sample_config(s);
    r.config["phi"] = phi_to_json(phi);
    return r;
}

namespace {

// Phi_phi(K, L) and Phi(K) on shared samples: columns V_phi V^{-n-1}, V^{-n}.
std::vector<std::vector<double>> orlicz_columns(const ConvexBody& K, const ConvexBody& L,
                                                const OrliczFunction& phi, const GrassmannSample& s)
{
    const int n = s.ambient_dim();
    return sample_columns(s, 2, [&](const Subspace& xi, double* out) {
        const Polytope Kx = projected_polytope(K, xi);
        const double v = Kx.volume();
        out[0] = subspace_orlicz_mixed_volume(Kx, L, xi, phi) * std::pow(v, -n - 1);
        out[1] = std::pow(v, -n);
    });
}

CheckResult phi_ratio_identity(const std::vector<std::vector<double>>& cols, double factor,
                               const GrassmannSample& s, const Tolerances& tol)
{
    // factor * Phi_phi = Phi, both as (omega_n / omega_j) m^{-1/n}.
    const int n = s.ambient_dim(), j = s.dim();
    const double w = omega(n) / omega(j);
    const MeanVector m = means_of(cols);
    const Propagated d = propagate(m, [&](const Eigen::VectorXd& x) {
        return factor * w * std::pow(x(0), -1.0 / n) - w * std::pow(x(1), -1.0 / n);
    });
    const double lhs = factor * w * std::pow(m.mean(0), -1.0 / n), rhs = w * std::pow(m.mean(1), -1.0 / n);
    return identity(lhs, rhs, d.std_error, tol.atom * scale_of(lhs, rhs), tol);
}

} // namespace

CheckResult check_lambda_scaling(const ConvexBody& K, const OrliczFunction& phi, double lambda,
                                 const GrassmannSample& s, const Tolerances& tol)
{
    const int n = s.ambient_dim();
    const auto cols = orlicz_columns(K, dilate(K, lambda), phi, s);
    CheckResult r = phi_ratio_identity(cols, std::pow(phi(lambda), 1.0 / n), s, tol);
    r.config = sample_config(s);
    r.config["phi"] = phi_to_json(phi);
    r.config["lambda"] = lambda;
    return r;
}

CheckResult check_equal_bodies(const ConvexBody& K, const OrliczFunction& phi, const GrassmannSample& s,
                               const Tolerances& tol)
{
    CheckResult r = phi_ratio_identity(orlicz_columns(K, K, phi, s), 1.0, s, tol);
    r.config = sample_config(s);
    r.config["phi"] = phi_to_json(phi);
    return r;
}

CheckResult check_lp_pipeline(const ConvexBody& K, const ConvexBody& L, double p, const GrassmannSample& s,
                              const Tolerances& tol)
{
    const Estimate a = lp_mixed_affine_quermassintegral(K, L, p, s);
    const Estimate b = orlicz_mixed_affine_quermassintegral(K, L, make_power(p), s);
    CheckResult r = identity(a.value, b.value, 0.0, 1e-12 * scale_of(a.value, b.value), tol);
    r.config = sample_config(s);
    r.config["p"] = p;
    return r;
}

CheckResult check_sl_invariance(const ConvexBody& K, const LinearMap& T, int j, std::size_t samples,
                                std::uint64_t seed_a, std::uint64_t seed_b, const Tolerances& tol)
{
    require(T.is_special(), "check_sl_invariance: T must have determinant 1");
    const int n = K.dim();
    const Estimate a = affine_quermassintegral(apply_linear(K, T), GrassmannSample(n, j, samples, seed_a));
    const Estimate b = affine_quermassintegral(K, GrassmannSample(n, j, samples, seed_b));
    CheckResult r = identity(a.value, b.value, std::hypot(a.std_error, b.std_error), 0.0, tol);
    r.config = {{"n", n}, {"j", j}, {"samples", samples}, {"seed_a", seed_a}, {"seed_b", seed_b}};
    return r;
}

CheckResult check_sl_invariance_orlicz(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                       const LinearMap& T, int j, std::size_t samples, std::uint64_t seed_a,
                                       std::uint64_t seed_b, const Tolerances& tol)
{
    require(T.is_special(), "check_sl_invariance_orlicz: T must have determinant 1");
    const int n = K.dim();
    const Estimate a = orlicz_mixed_affine_quermassintegral(apply_linear(K, T), apply_linear(L, T), phi,
                                                            GrassmannSample(n, j, samples, seed_a));
    const Estimate b = orlicz_mixed_affine_quermassintegral(K, L, phi, GrassmannSample(n, j, samples, seed_b));
    CheckResult r = identity(a.value, b.value, std::hypot(a.std_error, b.std_error), 0.0, tol);
    r.config = {{"n", n},       {"j", j},           {"samples", samples},
                {"seed_a", seed_a}, {"seed_b", seed_b}, {"phi", phi_to_json(phi)}};
    return r;
}

LinearMap random_special_linear(int n, std::uint64_t seed, double max_condition)
{
    std::normal_distribution<double> g;
    for (std::uint64_t attempt = 0;; ++attempt) {
        auto rng = sample_stream(seed, attempt);
        Mat m(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m(r, c) = g(rng);
        const Eigen::JacobiSVD<Mat> svd(m);
        const auto sv = svd.singularValues();
        if (sv(n - 1) <= 0.0 || sv(0) / sv(n - 1) > max_condition) continue;
        double det = m.determinant();
        if (det < 0) {
            m.col(0) = -m.col(0);
            det = -det;
        }
        return LinearMap(m / std::pow(det, 1.0 / n));
    }
}

namespace {

// Columns A = V_phi(K|xi, L|xi) V(K|xi)^{-n-1}, B = V(K|xi)^{-n}, C = V(L|xi)^{-n}:
// (Phi_phi / Phi)^{-n} = A / B and (Phi(L) / Phi(K))^{1/j} = (B / C)^{1/(nj)}.
CheckResult orlicz_minkowski_result(const std::vector<double>& a, const std::vector<double>& b,
                                    const std::vector<double>& c, const OrliczFunction& phi,
                                    const GrassmannSample& s, const Tolerances& tol)
{
    const MeanVector m = sample_means({&a, &b, &c});
    const double nj = static_cast<double>(s.ambient_dim()) * s.dim();
    auto lhs_of = [](const Eigen::VectorXd& x) { return x(0) / x(1); };
    auto rhs_of = [&](const Eigen::VectorXd& x) { return phi(std::pow(x(1) / x(2), 1.0 / nj)); };
    const Propagated d = propagate(m, [&](const Eigen::VectorXd& x) { return lhs_of(x) - rhs_of(x); });
    const double lhs = lhs_of(m.mean), rhs = rhs_of(m.mean);
    CheckResult r = inequality(lhs, rhs, d.std_error, tol.atom * scale_of(lhs, rhs), tol);
    r.config = sample_config(s);
    r.config["phi"] = phi_to_json(phi);
    return r;
}

} // namespace

CheckResult check_orlicz_minkowski_quermass(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                            const GrassmannSample& s, const Tolerances& tol)
{
    return check_orlicz_minkowski_quermass(K, {&L}, {phi}, s, tol).front();
}

std::vector<CheckResult> check_orlicz_minkowski_quermass(const ConvexBody& K,
                                                         const std::vector<const ConvexBody*>& Ls,
                                                         const std::vector<OrliczFunction>& phis,
                                                         const GrassmannSample& s, const Tolerances& tol)
{
    const int n = s.ambient_dim();
    const int nl = static_cast<int>(Ls.size()), np = static_cast<int>(phis.size());
    const DirectionSet D = sample_dirs(s, 0);
    // Column 0: B; 1 + l: C for Ls[l]; 1 + nl + l * np + p: A for (Ls[l], phis[p]).
    const auto cols = sample_columns(s, 1 + nl + nl * np, [&](const Subspace& xi, double* out) {
        const Polytope Kx = projected_polytope(K, xi);
        const double v = Kx.volume();
        out[0] = std::pow(v, -n);
        for (int l = 0; l < nl; ++l) {
            out[1 + l] = std::pow(projected_volume(*Ls[l], xi, D), -n);
            for (int p = 0; p < np; ++p)
                out[1 + nl + l * np + p] =
                    subspace_orlicz_mixed_volume(Kx, *Ls[l], xi, phis[p]) * std::pow(v, -n - 1);
        }
    });
    std::vector<CheckResult> out;
    out.reserve(nl * np);
    for (int l = 0; l < nl; ++l)
        for (int p = 0; p < np; ++p)
            out.push_back(orlicz_minkowski_result(cols[1 + nl + l * np + p], cols[0], cols[1 + l], phis[p], s, tol));
    return out;
}

CheckResult check_orlicz_minkowski_quermass(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                            int j, std::size_t samples, std::uint64_t seed)
{
    return check_orlicz_minkowski_quermass(K, L, phi, make_sample(K.dim(), j, samples, seed), {});
}

std::pair<CheckResult, CheckResult> check_decomposition_and_bm(const ConvexBody& K, const ConvexBody& L,
                                                               const OrliczFunction& phi, double eps,
                                                               const GrassmannSample& s, int dirs,
                                                               const Tolerances& tol)
{
    const int n = s.ambient_dim(), j = s.dim();
    require(K.dim() == n && L.dim() == n, "check_decomposition_and_bm: dimension mismatch");
    require(eps > 0.0, "check_decomposition_and_bm: eps must be positive");
    const DirectionSet D = sample_dirs(s, dirs);
    // Columns: V_phi(P, K|xi) V(P)^{-n-1}, V_phi(P, L|xi) V(P)^{-n-1}, V(P)^{-n}, V(K|xi)^{-n}, V(L|xi)^{-n}.
    const auto cols = sample_columns(s, 5, [&](const Subspace& xi, double* out) {
        const ConvexBody Kx = ConvexBody::polytope(projected_polytope(K, xi));
        const ConvexBody Lx = L.is_polytope() ? ConvexBody::polytope(projected_polytope(L, xi)) : project(L, xi);
        const Polytope P = outer_polytope(orlicz_sum(Kx, Lx, {1.0, eps}, phi), augmented_directions(D, {&Kx, &Lx}));
        const double vP = P.volume();
        const double vL = Lx.is_oracle() ? outer_polytope(Lx, D).volume() : volume(Lx);
        out[0] = orlicz_mixed_volume(P, Kx, phi) * std::pow(vP, -n - 1);
        out[1] = orlicz_mixed_volume(P, Lx, phi) * std::pow(vP, -n - 1);
        out[2] = std::pow(vP, -n);
        out[3] = std::pow(Kx.as_polytope().volume(), -n);
        out[4] = std::pow(vL, -n);
    });
    const MeanVector m = means_of(cols);
    const double nj = static_cast<double>(n) * j;

    auto sum_of = [&](const Eigen::VectorXd& x) { return (x(0) + eps * x(1)) / x(2); };
    const Propagated ds = propagate(m, [&](const Eigen::VectorXd& x) { return sum_of(x) - 1.0; });
    const double total = sum_of(m.mean);
    CheckResult decomposition = identity(total, 1.0, ds.std_error, tol.atom, tol);

    auto bm_of = [&](const Eigen::VectorXd& x) {
        return phi(std::pow(x(2) / x(3), 1.0 / nj)) + eps * phi(std::pow(x(2) / x(4), 1.0 / nj));
    };
    const Propagated db = propagate(m, [&](const Eigen::VectorXd& x) { return 1.0 - bm_of(x); });
    const double rhs = bm_of(m.mean);
    CheckResult bm = inequality(1.0, rhs, db.std_error, tol.atom, tol);

    json cfg = sample_config(s);
    cfg["phi"] = phi_to_json(phi);
    cfg["eps"] = eps;
    cfg["dirs"] = static_cast<int>(D.size());
    decomposition.config = cfg;
    bm.config = cfg;
    return {decomposition, bm};
}

CheckResult check_decomposition_identity(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                         double eps, int j, std::size_t samples, std::uint64_t seed)
{
    return check_decomposition_and_bm(K, L, phi, eps, make_sample(K.dim(), j, samples, seed), 0, {}).first;
}

CheckResult check_orlicz_bm_quermass(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                     double eps, int j, std::size_t samples, std::uint64_t seed)
{
    return check_decomposition_and_bm(K, L, phi, eps, make_sample(K.dim(), j, samples, seed), 0, {}).second;
}

CheckResult check_first_variation_quermass(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                           const std::vector<double>& eps, const GrassmannSample& s, int dirs,
                                           const Tolerances& tol)
{
    const int d = dirs > 0 ? dirs : static_cast<int>(sample_dirs(s, 0).size());
    const QuermassVariation v = first_variation_quermass(K, L, phi, eps, s, d);
    const double lhs = v.variation.value, rhs = v.target.value;
    const double se = std::hypot(v.value_stderr, v.target.std_error);
    CheckResult r = identity(lhs, rhs, se, tol.fv_quermass * std::abs(rhs), tol);
    r.config = sample_config(s);
    r.config["phi"] = phi_to_json(phi);
    r.config["dirs"] = d;
    r.config["eps"] = eps;
    r.config["quotients"] = v.variation.quotients;
    r.config["richardson"] = v.variation.richardson;
    r.config["fitted_order"] = v.variation.fitted_order;
    r.config["monotone"] = v.variation.monotone;
    r.config["relative_error"] = std::abs(lhs - rhs) / std::abs(rhs);
    return r;
}

CheckResult check_lutwak_conjecture(const ConvexBody& K, const GrassmannSample& s, const Tolerances& tol)
{
    const int n = s.ambient_dim(), j = s.dim();
    const Estimate e = affine_quermassintegral(K, s);
    const double scale = std::pow(omega(n), n - j) * std::pow(require_volume(K, "check_lutwak_conjecture"), j);
    const double ratio = std::pow(e.value, n) / scale;
    const double se = n * ratio / e.value * e.std_error;
    CheckResult r = probe(ratio - 1.0, se, tol.atom, tol);
    r.config = sample_config(s);
    r.config["phi_power_n"] = std::pow(e.value, n);
    r.config["reference"] = scale;
    return r;
}

CheckResult check_lutwak_conjecture(const ConvexBody& K, int j, std::size_t samples, std::uint64_t seed)
{
    return check_lutwak_conjecture(K, make_sample(K.dim(), j, samples, seed), {});
}

} // namespace quermass::harness
