#include "quermass/mixed_volumes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "quermass/unit_ball.hpp"

namespace quermass {

namespace {

const Polytope& require_polytope(const ConvexBody& K, const char* what)
{
    if (!K.is_polytope())
        throw InvalidInput(std::string(what) + ": first body must be a polytope (use outer_polytope)");
    return K.as_polytope();
}

// Orthonormal basis of u^perp (u a unit vector) as the columns of a
// d x (d-1) matrix: the Householder reflection taking e_k to -+u, minus column k.
Mat complement_basis(const Vec& u)
{
    const int d = static_cast<int>(u.size());
    int k = 0;
    u.cwiseAbs().maxCoeff(&k);
    Vec w = u;
    w(k) += u(k) >= 0.0 ? 1.0 : -1.0;
    const double ww = w.squaredNorm();
    Mat basis(d, d - 1);
    for (int c = 0, col = 0; c < d; ++c) {
        if (c == k) continue;
        Vec e = Vec::Zero(d);
        e(c) = 1.0;
        basis.col(col++) = e - (2.0 * w(c) / ww) * w;
    }
    return basis;
}

Polytope outer_polytope_1d(const ConvexBody& body)
{
    const double hp = body.h(make_vec({1.0}));
    const double hm = body.h(make_vec({-1.0}));
    std::vector<PolytopeFacet> facets = {{make_vec({1.0}), hp, 1.0}, {make_vec({-1.0}), hm, 1.0}};
    return Polytope::from_parts(1, {make_vec({-hm}), make_vec({hp})}, std::move(facets), hp + hm);
}

} // namespace

Vec SurfaceMeasure::closure() const
{
    Vec s = Vec::Zero(dim);
    for (const auto& a : atoms) s += a.weight * a.normal;
    return s;
}

SurfaceMeasure surface_area_measure(const Polytope& P)
{
    SurfaceMeasure m;
    m.dim = P.dim();
    for (const auto& f : P.facets()) m.atoms.push_back({f.normal, f.area});
    return m;
}

SurfaceMeasure surface_area_measure(const ConvexBody& P)
{
    return surface_area_measure(require_polytope(P, "surface_area_measure"));
}

double volume(const Polytope& P)
{
    const double v = facet_sum(P, [](const Vec&, double h) { return h; });
    if (std::abs(v - P.volume()) > 1e-9 * std::max(1.0, std::abs(v)))
        throw ComputationError("volume: atom sum disagrees with the cone decomposition");
    return v;
}

double volume(const ConvexBody& K)
{
    if (K.is_polytope()) return volume(K.as_polytope());
    if (K.is_ellipsoid()) return omega(K.dim()) * std::sqrt(K.as_ellipsoid().shape().determinant());
    throw InvalidInput("volume: support oracles need outer_polytope first");
}

double mixed_volume_V1(const Polytope& K, const ConvexBody& L)
{
    require(K.dim() == L.dim(), "mixed_volume_V1: dimension mismatch");
    return facet_sum(K, [&](const Vec& u, double) { return L.h(u); });
}

double mixed_volume_V1(const ConvexBody& K, const ConvexBody& L)
{
    return mixed_volume_V1(require_polytope(K, "mixed_volume_V1"), L);
}

double lp_mixed_volume(const Polytope& K, const ConvexBody& L, double p)
{
    require(K.dim() == L.dim(), "lp_mixed_volume: dimension mismatch");
    require(p >= 1.0, "lp_mixed_volume: need p >= 1");
    return facet_sum(K, [&](const Vec& u, double hK) {
        return std::pow(L.h(u), p) * std::pow(hK, 1.0 - p);
    });
}

double lp_mixed_volume(const ConvexBody& K, const ConvexBody& L, double p)
{
    return lp_mixed_volume(require_polytope(K, "lp_mixed_volume"), L, p);
}

double orlicz_mixed_volume(const Polytope& K, const ConvexBody& L, const OrliczFunction& phi)
{
    require(K.dim() == L.dim(), "orlicz_mixed_volume: dimension mismatch");
    return orlicz_mixed_volume_with(K, [&](const Vec& u) { return L.h(u); }, phi);
}

double orlicz_mixed_volume(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi)
{
    return orlicz_mixed_volume(require_polytope(K, "orlicz_mixed_volume"), L, phi);
}

DirectionSet augmented_directions(const DirectionSet& dirs, const std::vector<const ConvexBody*>& bodies)
{
    DirectionSet out;
    std::set<std::array<long long, kMaxDim>> seen;
    auto add = [&](const Vec& u) {
        std::array<long long, kMaxDim> key{};
        for (int i = 0; i < u.size(); ++i) key[i] = std::llround(u(i) * 1e9);
        if (seen.insert(key).second) out.push_back(u);
    };
    for (const auto* body : bodies)
        if (body && body->is_polytope())
            for (const auto& f : body->as_polytope().facets()) add(f.normal);
    for (const auto& u : dirs) add(u);
    return out;
}

Polytope outer_polytope(const ConvexBody& body, const DirectionSet& dirs_in)
{
    const int d = body.dim();
    if (d == 1) return outer_polytope_1d(body);

    const DirectionSet dirs = augmented_directions(dirs_in, {});
    if (static_cast<int>(dirs.size()) < d + 1)
        throw ComputationError("outer_polytope: unbounded intersection (too few directions)");

    std::vector<double> h(dirs.size());
    PointList dual(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        require(dirs[i].size() == d, "outer_polytope: direction dimension mismatch");
        h[i] = body.h(dirs[i]);
        require(h[i] > 0.0, "outer_polytope: support must be positive");
        dual[i] = dirs[i] / h[i];
    }

    Hull hull;
    try {
        hull = convex_hull(dual, d);
    } catch (const ComputationError&) {
        throw ComputationError("outer_polytope: unbounded intersection (directions do not span)");
    }

    // The origin must be strictly inside the dual hull, else the primal is unbounded.
    double dual_scale = 0.0;
    for (const auto& y : dual) dual_scale = std::max(dual_scale, y.norm());
    PointList vertices;
    vertices.reserve(hull.facets.size());
    std::vector<std::vector<int>> incident(dirs.size());
    for (std::size_t g = 0; g < hull.facets.size(); ++g) {
        const auto& f = hull.facets[g];
        if (f.offset <= 1e-12 * dual_scale)
            throw ComputationError("outer_polytope: unbounded intersection (insufficient directions)");
        vertices.push_back(f.normal / f.offset);
        for (int i : f.vertices) incident[i].push_back(static_cast<int>(g));
    }

    std::vector<PolytopeFacet> facets;
    double vol = 0.0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        if (static_cast<int>(incident[i].size()) < d) continue;
        const Mat basis = complement_basis(dirs[i]);
        PointList pts;
        pts.reserve(incident[i].size());
        for (int g : incident[i]) pts.push_back(basis.transpose() * vertices[g]);
        const double area = hull_volume_or_zero(pts, d - 1);
        if (area <= 0.0) continue;
        facets.push_back({dirs[i], h[i], area});
        vol += h[i] * area;
    }
    return Polytope::from_parts(d, std::move(vertices), std::move(facets), vol / d);
}

int default_volume_directions(int n) { return n >= 4 ? 32768 : 8192; }

std::vector<double> default_eps_schedule()
{
    std::vector<double> eps;
    for (int k = 0; k < 11; ++k) eps.push_back(0.0016 / (1 << k));
    return eps;
}

void extrapolate(VariationEstimate& est)
{
    const auto& e = est.epsilons;
    const auto& q = est.quotients;
    require(!q.empty() && q.size() == e.size(), "extrapolate: need matching eps and quotients");
    est.richardson.clear();
    for (std::size_t k = 0; k + 1 < q.size(); ++k)
        est.richardson.push_back(q[k + 1] + (q[k + 1] - q[k]) * e[k + 1] / (e[k] - e[k + 1]));
    est.extrapolated = est.richardson.empty() ? q.back() : est.richardson.back();

    // Order p of q(e) = c + a e^p from the last three quotients, by bisection on
    // the ratio of consecutive differences.
    est.fitted_order = 0.0;
    if (q.size() >= 3) {
        const std::size_t k = q.size() - 3;
        const double d0 = q[k + 1] - q[k], d1 = q[k + 2] - q[k + 1];
        if (d0 != 0.0 && d1 != 0.0 && (d0 > 0) == (d1 > 0)) {
            const double target = std::log(d0 / d1);
            auto model = [&](double p) {
                return std::log((std::pow(e[k], p) - std::pow(e[k + 1], p)) /
                                (std::pow(e[k + 1], p) - std::pow(e[k + 2], p)));
            };
            double lo = 1e-3, hi = 8.0;
            if (target > model(lo) && target < model(hi)) {
                for (int it = 0; it < 100; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (model(mid) < target ? lo : hi) = mid;
                }
                est.fitted_order = 0.5 * (lo + hi);
            }
        }
    }

    est.monotone = true;
    int sign = 0;
    for (std::size_t k = 0; k + 1 < q.size(); ++k) {
        const double diff = q[k + 1] - q[k];
        if (std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(q[k]))) continue;
        const int s = diff > 0 ? 1 : -1;
        if (sign != 0 && s != sign) est.monotone = false;
        sign = s;
    }
}

VariationEstimate first_variation_volume(const ConvexBody& K, const ConvexBody& L,
                                         const OrliczFunction& phi, const std::vector<double>& eps,
                                         const DirectionSet& dirs)
{
    require(K.dim() == L.dim(), "first_variation_volume: dimension mismatch");
    require(!eps.empty(), "first_variation_volume: empty eps schedule");
    for (std::size_t k = 0; k < eps.size(); ++k) {
        require(eps[k] > 0.0, "first_variation_volume: eps must be positive");
        require(k == 0 || eps[k] < eps[k - 1], "first_variation_volume: eps must be strictly decreasing");
    }
    const DirectionSet D = augmented_directions(dirs, {&K, &L});
    const double v0 = outer_polytope(K, D).volume();

    // eps is in units of 1 / phi(max h_L / h_K).
    double ratio = 0.0;
    for (const auto& u : D) ratio = std::max(ratio, L.h(u) / K.h(u));
    const double unit = 1.0 / std::max(1.0, phi(ratio));

    VariationEstimate est;
    for (double e : eps) est.epsilons.push_back(e * unit);
    for (double e : est.epsilons) {
        const ConvexBody sum = orlicz_sum(K, L, CombinationWeights(1.0, e), phi);
        est.quotients.push_back((outer_polytope(sum, D).volume() - v0) / e);
    }
    extrapolate(est);
    est.value = est.extrapolated * phi.left_derivative_at_one() / K.dim();
    return est;
}

} // namespace quermass
