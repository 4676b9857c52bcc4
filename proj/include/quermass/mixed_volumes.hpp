#pragma once

#include <vector>

#include "quermass/bodies.hpp"
#include "quermass/orlicz.hpp"

namespace quermass {

/// Atomic surface area measure of a polytope: one atom per facet.
struct SurfaceMeasure {
    struct Atom {
        Vec normal;
        double weight = 0.0; ///< facet (n-1)-volume
    };
    int dim = 0;
    std::vector<Atom> atoms;

    /// sum of weight * normal; vanishes for a closed polytope.
    Vec closure() const;
};

SurfaceMeasure surface_area_measure(const Polytope& P);
SurfaceMeasure surface_area_measure(const ConvexBody& P);

/// (1/n) sum over facets of w * f(u, h_P(u)).
template <typename F>
double facet_sum(const Polytope& P, F&& f)
{
    double s = 0.0;
    for (const auto& facet : P.facets()) s += facet.area * f(facet.normal, facet.offset);
    return s / P.dim();
}

/// Volume: atom sum (1/n) sum h_K(u_i) w_i for polytopes, omega_n sqrt(det M)
/// for ellipsoids. Oracle bodies must go through outer_polytope first.
double volume(const ConvexBody& K);
double volume(const Polytope& P);

/// V_1(K, L) = (1/n) sum h_L(u_i) w_i.
double mixed_volume_V1(const ConvexBody& K, const ConvexBody& L);
double mixed_volume_V1(const Polytope& K, const ConvexBody& L);

/// V_p(K, L) = (1/n) sum h_L^p h_K^{1-p} w_i, p >= 1.
double lp_mixed_volume(const ConvexBody& K, const ConvexBody& L, double p);
double lp_mixed_volume(const Polytope& K, const ConvexBody& L, double p);

/// V_phi(K, L) = (1/n) sum phi(h_L / h_K) h_K w_i.
double orlicz_mixed_volume(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi);
double orlicz_mixed_volume(const Polytope& K, const ConvexBody& L, const OrliczFunction& phi);

/// Same sum with the support of L supplied directly, evaluated at the facet
/// normals of K (used when L is restricted to a subspace).
template <typename SupportL>
double orlicz_mixed_volume_with(const Polytope& K, SupportL&& hL, const OrliczFunction& phi)
{
    return facet_sum(K, [&](const Vec& u, double hK) { return phi(hL(u) / hK) * hK; });
}

/// Intersection of the halfspaces <x, u> <= h(u) over `dirs`, computed as the
/// polar of the convex hull of the points u / h(u). Every constraint is tight,
/// so the facet with normal u carries support value exactly h(u).
/// Throws ComputationError when the directions do not bound a polytope.
Polytope outer_polytope(const ConvexBody& body, const DirectionSet& dirs);

/// `dirs` together with the facet normals of any polytope among `bodies`,
/// with duplicates removed.
DirectionSet augmented_directions(const DirectionSet& dirs, const std::vector<const ConvexBody*>& bodies);

/// Difference quotients along a decreasing eps schedule and their
/// extrapolation to eps -> 0.
struct VariationEstimate {
    double value = 0.0;               ///< extrapolated * phi'(1-) / (dimension)
    std::vector<double> epsilons;
    std::vector<double> quotients;
    std::vector<double> richardson;   ///< linear extrapolants from consecutive pairs
    double extrapolated = 0.0;
    double fitted_order = 0.0;        ///< observed convergence order of the quotients
    bool monotone = true;             ///< false flags noisy quotients (refine N)
};

/// Direction count used for volumes of oracle bodies: 8192 for n <= 3, 32768 for n = 4.
int default_volume_directions(int n);

/// 0.0016 * 2^-k for k = 0..10, ending near 1.6e-6. Quotients settle into
/// their first-order regime only once eps * phi(h_L / h_K) is small, which for
/// steep phi and thin K takes eps well below 1e-4.
std::vector<double> default_eps_schedule();

/// Fill richardson/extrapolated/fitted_order/monotone from epsilons and quotients.
void extrapolate(VariationEstimate& est);

/// (V(K +phi eps.L) - V(K)) / eps with volumes of outer polytopes over the
/// augmented direction set, extrapolated; value = limit * phi'(1-) / n.
/// The schedule is divided by max(1, phi(r)), r the largest h_L / h_K over the
/// directions; `epsilons` of the result holds the values actually used.
VariationEstimate first_variation_volume(const ConvexBody& K, const ConvexBody& L,
                                         const OrliczFunction& phi, const std::vector<double>& eps,
                                         const DirectionSet& dirs);

} // namespace quermass
