#include "quermass/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace quermass {

namespace {

std::string format_param(double x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

} // namespace

OrliczFunction make_power(double p)
{
    require(std::isfinite(p) && p >= 1.0, "make_power: need p >= 1");
    OrliczFunction f;
    f.family_ = OrliczFunction::Family::Power;
    f.name_ = "power(" + format_param(p) + ")";
    f.power_ = p;
    f.derivative_ = p;
    f.strictly_convex_ = p > 1.0;
    return f;
}

OrliczFunction make_normalized_exp(double alpha)
{
    require(std::isfinite(alpha) && alpha > 0.0, "make_normalized_exp: need alpha > 0");
    OrliczFunction f;
    f.family_ = OrliczFunction::Family::Exp;
    f.name_ = "exp(" + format_param(alpha) + ")";
    f.param_ = alpha;
    f.denom_ = std::expm1(alpha);
    f.derivative_ = alpha * std::exp(alpha) / f.denom_;
    f.strictly_convex_ = true;
    return f;
}

OrliczFunction OrliczFunction::custom(std::string name, std::function<double(double)> fn,
                                      double left_derivative_at_one, bool strictly_convex)
{
    require(static_cast<bool>(fn), "OrliczFunction::custom: missing function");
    require(left_derivative_at_one > 0.0, "OrliczFunction::custom: phi'(1-) must be positive");
    OrliczFunction f;
    f.family_ = Family::Custom;
    f.name_ = std::move(name);
    f.custom_ = std::move(fn);
    f.derivative_ = left_derivative_at_one;
    f.strictly_convex_ = strictly_convex;
    return f;
}

std::optional<double> OrliczFunction::closed_form_inverse(double y) const
{
    switch (family_) {
    case Family::Power: return std::pow(y, 1.0 / power_);
    case Family::Exp: return std::log1p(y * denom_) / param_;
    default: return std::nullopt;
    }
}

double OrliczFunction::inverse(double y) const
{
    require(y >= 0.0 && y <= 1.0, "OrliczFunction::inverse: argument must lie in [0, 1]");
    if (auto x = closed_form_inverse(y)) return *x;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((*this)(mid) < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

bool OrliczClassReport::ok(double tol) const
{
    return std::abs(value_at_zero) <= tol && std::abs(value_at_one - 1.0) <= tol &&
           monotonicity_violation <= tol && convexity_violation <= tol && derivative_error <= 1e-4;
}

OrliczClassReport class_report(const OrliczFunction& phi, double t_max, int grid)
{
    OrliczClassReport r;
    r.value_at_zero = phi(0.0);
    r.value_at_one = phi(1.0);
    double prev = phi(0.0);
    for (int i = 1; i <= grid; ++i) {
        const double t = t_max * i / grid;
        const double v = phi(t);
        r.monotonicity_violation = std::max(r.monotonicity_violation, prev - v);
        prev = v;
    }
    for (int i = 0; i <= grid; ++i) {
        for (int k = i + 2; k <= grid; k += 7) {
            const double s = t_max * i / grid, t = t_max * k / grid;
            const double excess = phi(0.5 * (s + t)) - 0.5 * (phi(s) + phi(t));
            const double scale = std::max(1.0, std::abs(phi(t)));
            r.convexity_violation = std::max(r.convexity_violation, excess / scale);
        }
    }
    const double h = 1e-6;
    r.derivative_error = std::abs((phi(1.0) - phi(1.0 - h)) / h - phi.left_derivative_at_one());
    return r;
}

CombinationWeights::CombinationWeights(double a_, double b_) : a(a_), b(b_)
{
    require(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b),
            "CombinationWeights: a and b must be positive");
}

OrliczRoot solve_orlicz_root(double hK, double hL, const CombinationWeights& w,
                             const OrliczFunction& phi)
{
    require(hK > 0.0 && hL > 0.0, "solve_orlicz_support: support values must be positive");
    OrliczRoot root;
    auto F = [&](double lambda) {
        ++root.evaluations;
        return w.a * phi(hK / lambda) + w.b * phi(hL / lambda) - 1.0;
    };

    // phi(t) <= t on [0,1], so F(hi) <= 0 once hi >= max(hK, hL, a hK + b hL).
    double hi = std::max({hK, hL, w.a * hK + w.b * hL});
    double fhi = F(hi);
    while (fhi > 0.0) {
        hi *= 2.0;
        fhi = F(hi);
    }
    double lo = hi;
    double flo = fhi;
    while (flo < 0.0) {
        lo *= 0.5;
        flo = F(lo);
    }
    if (flo == 0.0 || fhi == 0.0) {
        root.lambda = flo == 0.0 ? lo : hi;
        root.bracket_lo = lo;
        root.bracket_hi = hi;
        return root;
    }

    // Illinois variant of regula falsi on the bracket [lo, hi] with F(lo) > 0 > F(hi).
    double x = hi, fx = fhi;
    int side = 0;
    for (int it = 0; it < 200; ++it) {
        x = (lo * fhi - hi * flo) / (fhi - flo);
        if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        fx = F(x);
        if (fx == 0.0 || std::abs(fx) <= 1e-15) break;
        if (fx > 0.0) {
            lo = x;
            flo = fx;
            if (side == 1) fhi *= 0.5;
            side = 1;
        } else {
            hi = x;
            fhi = fx;
            if (side == -1) flo *= 0.5;
            side = -1;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    }
    root.lambda = x;
    root.residual = fx;
    root.bracket_lo = lo;
    root.bracket_hi = hi;
    return root;
}

ConvexBody orlicz_sum(const ConvexBody& K, const ConvexBody& L, const CombinationWeights& w,
                      const OrliczFunction& phi)
{
    require(K.dim() == L.dim(), "orlicz_sum: dimension mismatch");
    auto k = std::make_shared<const ConvexBody>(K);
    auto l = std::make_shared<const ConvexBody>(L);
    SupportOracle o;
    o.dim = K.dim();
    o.fn = [k, l, w, phi](const Vec& u) { return solve_orlicz_support(k->h(u), l->h(u), w, phi); };
    // lambda is increasing in both support values.
    o.inradius = solve_orlicz_support(K.inradius(), L.inradius(), w, phi);
    o.lipschitz = solve_orlicz_support(K.circumradius(), L.circumradius(), w, phi);
    o.label = "orlicz_sum[" + phi.name() + "]";
    return ConvexBody::oracle(std::move(o));
}

double orlicz_projection_discrepancy(const ConvexBody& K, const ConvexBody& L, double eps,
                                     const OrliczFunction& phi, const Subspace& xi,
                                     const DirectionSet& dirs)
{
    require(eps > 0.0, "orlicz projection: eps must be positive");
    const CombinationWeights w(1.0, eps);
    const ConvexBody projected_sum = project(orlicz_sum(K, L, w, phi), xi);
    const ConvexBody sum_of_projections = orlicz_sum(project(K, xi), project(L, xi), w, phi);
    double worst = 0.0;
    for (const auto& u : dirs) {
        require(u.size() == xi.dim(), "orlicz projection: direction dimension mismatch");
        worst = std::max(worst, std::abs(projected_sum.h(u) - sum_of_projections.h(u)));
    }
    return worst;
}

bool check_orlicz_sum_projection(const ConvexBody& K, const ConvexBody& L, double eps,
                                 const OrliczFunction& phi, const Subspace& xi,
                                 const DirectionSet& dirs)
{
    return orlicz_projection_discrepancy(K, L, eps, phi, xi, dirs) <= 1e-9;
}

} // namespace quermass
