#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "quermass/mixed_volumes.hpp"
#include "quermass/unit_ball.hpp"

using namespace quermass;

namespace {

ConvexBody box(std::initializer_list<double> half)
{
    const Vec h = make_vec(half);
    const int d = static_cast<int>(h.size());
    PointList pts;
    for (int mask = 0; mask < (1 << d); ++mask) {
        Vec v(d);
        for (int i = 0; i < d; ++i) v(i) = (mask >> i) & 1 ? h(i) : -h(i);
        pts.push_back(v);
    }
    return ConvexBody::polytope(pts);
}

ConvexBody square() { return box({1, 1}); }
ConvexBody rectangle() { return box({2, 1}); }
ConvexBody triangle() { return ConvexBody::polytope({make_vec({2, 0}), make_vec({0, 2}), make_vec({-1, -1})}); }

ConvexBody random_polytope(int n, int count, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    PointList pts;
    for (int i = 0; i < n; ++i)
        for (double s : {1.0, -1.0}) {
            Vec v = Vec::Zero(n);
            v(i) = 0.4 * s;
            pts.push_back(v);
        }
    for (int k = 0; k < count; ++k) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v(i) = g(rng);
        pts.push_back(v);
    }
    return ConvexBody::polytope(pts);
}

const std::vector<double> kEps = default_eps_schedule();

} // namespace

TEST(SurfaceMeasure, Examples)
{
    const auto sq = surface_area_measure(square());
    ASSERT_EQ(sq.atoms.size(), 4u);
    for (const auto& a : sq.atoms) EXPECT_NEAR(a.weight, 2.0, 1e-12);
    const auto cube = surface_area_measure(box({1, 1, 1}));
    ASSERT_EQ(cube.atoms.size(), 6u);
    for (const auto& a : cube.atoms) {
        EXPECT_NEAR(a.weight, 4.0, 1e-12);
        EXPECT_NEAR(a.normal.cwiseAbs().maxCoeff(), 1.0, 1e-12);
    }
    const auto tri = surface_area_measure(triangle());
    std::vector<double> w;
    for (const auto& a : tri.atoms) w.push_back(a.weight);
    std::sort(w.begin(), w.end());
    ASSERT_EQ(w.size(), 3u);
    EXPECT_NEAR(w[0], 2.0 * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(w[2], std::sqrt(10.0), 1e-12);
    EXPECT_LT(tri.closure().norm(), 1e-12);
    EXPECT_THROW(surface_area_measure(ConvexBody::ball(1, 2)), InvalidInput);
}

TEST(SurfaceMeasure, ClosureAndRepresentation)
{
    std::mt19937_64 rng(31);
    for (int n = 2; n <= 4; ++n)
        for (int k = 0; k < 5; ++k) {
            const ConvexBody K = random_polytope(n, 12 + 6 * k, rng);
            const auto m = surface_area_measure(K);
            EXPECT_LT(m.closure().norm(), 1e-9);
            for (const auto& a : m.atoms) EXPECT_GT(a.weight, 0.0);
            for (std::size_t i = 0; i < m.atoms.size(); ++i)
                for (std::size_t l = i + 1; l < m.atoms.size(); ++l)
                    EXPECT_GT((m.atoms[i].normal - m.atoms[l].normal).norm(), 1e-9);
            EXPECT_NEAR(volume(K), K.as_polytope().volume(), 1e-9);
        }
}

TEST(Volume, Examples)
{
    EXPECT_NEAR(volume(square()), 4.0, 1e-12);
    EXPECT_NEAR(volume(ConvexBody::ball(1, 3)), 4.0 * M_PI / 3.0, 1e-12);
    EXPECT_NEAR(volume(triangle()), 4.0, 1e-12);
    EXPECT_NEAR(volume(ConvexBody::ellipsoid(make_vec({1, 4}).asDiagonal().toDenseMatrix())), 2.0 * M_PI, 1e-12);
    EXPECT_NEAR(omega(4), M_PI * M_PI / 2.0, 1e-14);
    EXPECT_THROW(volume(orlicz_sum(square(), square(), {1, 1}, make_power(2))), InvalidInput);
}

TEST(MixedVolumes, Examples)
{
    const ConvexBody K = square(), L = rectangle(), disk = ConvexBody::ball(1, 2);
    EXPECT_NEAR(mixed_volume_V1(K, K), 4.0, 1e-12);
    EXPECT_NEAR(mixed_volume_V1(K, disk), 4.0, 1e-12);
    EXPECT_NEAR(mixed_volume_V1(K, box({2, 2})), 8.0, 1e-12);
    EXPECT_NEAR(lp_mixed_volume(K, L, 1.0), mixed_volume_V1(K, L), 1e-15);
    EXPECT_NEAR(lp_mixed_volume(K, K, 2.0), 4.0, 1e-12);
    EXPECT_NEAR(lp_mixed_volume(K, L, 2.0), 10.0, 1e-12);
    const auto sq = make_power(2);
    EXPECT_NEAR(orlicz_mixed_volume(K, K, make_normalized_exp(1.3)), 4.0, 1e-12);
    EXPECT_NEAR(orlicz_mixed_volume(K, box({2, 2}), sq), 16.0, 1e-12);
    EXPECT_NEAR(orlicz_mixed_volume(K, L, sq), 10.0, 1e-12);
    EXPECT_THROW(mixed_volume_V1(disk, K), InvalidInput);
    EXPECT_THROW(mixed_volume_V1(K, ConvexBody::ball(1, 3)), InvalidInput);
}

TEST(MixedVolumes, OrliczMatchesLp)
{
    std::mt19937_64 rng(41);
    for (int n = 2; n <= 4; ++n) {
        const ConvexBody K = random_polytope(n, 15, rng), L = random_polytope(n, 15, rng);
        for (double p : {1.0, 2.0, 3.5})
            EXPECT_NEAR(orlicz_mixed_volume(K, L, make_power(p)), lp_mixed_volume(K, L, p),
                        1e-12 * lp_mixed_volume(K, L, p));
    }
}

TEST(MixedVolumes, ClassicalInequalities)
{
    std::mt19937_64 rng(43);
    for (int n = 2; n <= 4; ++n)
        for (int k = 0; k < 6; ++k) {
            const ConvexBody K = random_polytope(n, 10 + k, rng), L = random_polytope(n, 14, rng);
            const double vk = volume(K), vl = volume(L);
            EXPECT_GE(std::pow(mixed_volume_V1(K, L), n), std::pow(vk, n - 1) * vl - 1e-9);
            for (double p : {1.5, 2.0, 4.0})
                EXPECT_GE(std::pow(lp_mixed_volume(K, L, p), n), std::pow(vk, n - p) * std::pow(vl, p) - 1e-9);
            for (const auto& phi : {make_power(1), make_power(2), make_normalized_exp(1)}) {
                EXPECT_GE(orlicz_mixed_volume(K, L, phi) / vk, phi(std::pow(vl / vk, 1.0 / n)) - 1e-9);
                const ConvexBody cK = dilate(K, 1.7);
                EXPECT_NEAR(orlicz_mixed_volume(K, cK, phi) / vk, phi(std::pow(volume(cK) / vk, 1.0 / n)), 1e-9);
            }
        }
}

TEST(OuterPolytope, Examples)
{
    const auto d2 = direction_set(2, 4096);
    EXPECT_NEAR(outer_polytope(ConvexBody::ball(1, 2), d2).volume(), M_PI, 1e-3 * M_PI);
    EXPECT_GT(outer_polytope(ConvexBody::ball(1, 2), d2).volume(), M_PI);
    const ConvexBody tri = triangle();
    SupportOracle o{2, [tri](const Vec& u) { return tri.h(u); }, tri.circumradius(), tri.inradius(), "tri"};
    EXPECT_NEAR(outer_polytope(ConvexBody::oracle(o), d2).volume(), 4.0, 0.005 * 4.0);
    const ConvexBody mink = orlicz_sum(square(), square(), {1, 1}, make_power(1));
    EXPECT_NEAR(outer_polytope(mink, d2).volume(), 16.0, 0.005 * 16.0);
}

TEST(OuterPolytope, ExactWithFacetNormals)
{
    const ConvexBody K = box({1, 2, 0.5});
    const auto dirs = augmented_directions(direction_set(3, 500), {&K});
    const Polytope P = outer_polytope(K, dirs);
    EXPECT_NEAR(P.volume(), 8.0, 1e-10);
    EXPECT_EQ(P.facets().size(), 6u);
    const ConvexBody T = triangle();
    EXPECT_NEAR(outer_polytope(T, augmented_directions(direction_set(2, 64), {&T})).volume(), 4.0, 1e-12);
    const ConvexBody C4 = box({1, 1, 1, 1});
    EXPECT_NEAR(outer_polytope(C4, augmented_directions(direction_set(4, 300), {&C4})).volume(), 16.0, 1e-10);
}

// Dual point sets of simple 4-polytopes are highly degenerate (every 2-face is
// a coplanar polygon); the hull must still recover K exactly.
TEST(OuterPolytope, ExactOnRandomFourPolytopes)
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 12; ++trial) {
        const ConvexBody K = random_polytope(4, 6 + trial, rng);
        const Polytope& KP = K.as_polytope();
        for (int extra : {0, 512, 2048}) {
            const DirectionSet D = extra ? direction_set(4, extra) : DirectionSet{};
            const Polytope P = outer_polytope(K, augmented_directions(D, {&K}));
            EXPECT_EQ(P.vertices().size(), KP.vertices().size()) << "trial " << trial << " dirs " << extra;
            EXPECT_EQ(P.facets().size(), KP.facets().size()) << "trial " << trial << " dirs " << extra;
            EXPECT_NEAR(P.volume(), KP.volume(), 1e-9 * KP.volume()) << "trial " << trial << " dirs " << extra;
        }
    }
}

TEST(OuterPolytope, HigherDimensionalBalls)
{
    const Polytope P3 = outer_polytope(ConvexBody::ball(1, 3), direction_set(3, 8192));
    EXPECT_GT(P3.volume(), omega(3));
    EXPECT_LT(P3.volume(), omega(3) * 1.002);
    for (const auto& f : P3.facets()) EXPECT_NEAR(f.offset, 1.0, 1e-15);
    EXPECT_LT(surface_area_measure(P3).closure().norm(), 1e-9);
    const Polytope P4 = outer_polytope(ConvexBody::ball(1, 4), direction_set(4, 4000));
    EXPECT_GT(P4.volume(), omega(4));
    EXPECT_LT(P4.volume(), omega(4) * 1.1);
    EXPECT_LT(surface_area_measure(P4).closure().norm(), 1e-8);
    const Polytope P1 = outer_polytope(ConvexBody::ball(2, 1), direction_set(1, 2));
    EXPECT_DOUBLE_EQ(P1.volume(), 4.0);
}

TEST(OuterPolytope, Convergence)
{
    const ConvexBody e = ConvexBody::ellipsoid(make_vec({1, 4}).asDiagonal().toDenseMatrix());
    double prev = std::numeric_limits<double>::infinity();
    for (int N : {64, 256, 1024, 4096}) {
        const double err = outer_polytope(e, direction_set(2, N)).volume() - 2.0 * M_PI;
        EXPECT_GT(err, 0.0);
        EXPECT_LT(err, prev);
        prev = err;
    }
}

TEST(OuterPolytope, UnboundedReported)
{
    const DirectionSet half = {make_vec({1, 0}), make_vec({0, 1}), make_vec({std::sqrt(0.5), std::sqrt(0.5)})};
    EXPECT_THROW(outer_polytope(ConvexBody::ball(1, 2), half), ComputationError);
    EXPECT_THROW(outer_polytope(ConvexBody::ball(1, 2), {make_vec({1, 0}), make_vec({-1, 0})}), ComputationError);
}

TEST(FirstVariation, Examples)
{
    const auto d = direction_set(2, 8192);
    const ConvexBody K = square();
    const auto a = first_variation_volume(K, K, make_power(1), kEps, d);
    EXPECT_NEAR(a.value, 4.0, 0.02 * 4.0);
    const auto b = first_variation_volume(K, rectangle(), make_power(2), kEps, d);
    EXPECT_NEAR(b.value, 10.0, 0.03 * 10.0);
    const ConvexBody B = ConvexBody::ball(1, 2);
    const auto c = first_variation_volume(B, B, make_normalized_exp(1), kEps, d);
    EXPECT_NEAR(c.value, M_PI, 0.03 * M_PI);
    EXPECT_TRUE(b.monotone);
    EXPECT_EQ(b.quotients.size(), kEps.size());
    EXPECT_EQ(b.richardson.size(), kEps.size() - 1);
}

TEST(FirstVariation, AgainstAtomSumsOnRandomPairs)
{
    std::mt19937_64 rng(47);
    for (int n = 2; n <= 3; ++n) {
        const ConvexBody K = random_polytope(n, 10, rng), L = random_polytope(n, 10, rng);
        for (const auto& phi : {make_power(1), make_power(2), make_normalized_exp(1)}) {
            const auto est = first_variation_volume(K, L, phi, kEps, direction_set(n, n == 2 ? 8192 : 4096));
            const double ref = orlicz_mixed_volume(K, L, phi);
            EXPECT_NEAR(est.value, ref, 0.03 * ref) << n << " " << phi.name();
        }
    }
}

TEST(FirstVariation, Extrapolation)
{
    VariationEstimate e;
    e.epsilons = {0.4, 0.2, 0.1};
    e.quotients = {3.0 + 2 * 0.4, 3.0 + 2 * 0.2, 3.0 + 2 * 0.1};
    extrapolate(e);
    EXPECT_NEAR(e.extrapolated, 3.0, 1e-14);
    EXPECT_NEAR(e.fitted_order, 1.0, 1e-12);
    EXPECT_TRUE(e.monotone);
    e.quotients = {3.0, 3.2, 3.1};
    extrapolate(e);
    EXPECT_FALSE(e.monotone);
    EXPECT_THROW(first_variation_volume(square(), square(), make_power(1), {0.1, 0.2}, direction_set(2, 64)),
                 InvalidInput);
}

TEST(VolumeInequalities, BrunnMinkowskiAndOrliczBM)
{
    std::mt19937_64 rng(53);
    const auto d = direction_set(2, 8192);
    for (int k = 0; k < 3; ++k) {
        const ConvexBody K = random_polytope(2, 10, rng), L = random_polytope(2, 10, rng);
        const auto D = augmented_directions(d, {&K, &L});
        const double vk = volume(K), vl = volume(L);
        const double vs = outer_polytope(orlicz_sum(K, L, {1, 1}, make_power(1)), D).volume();
        EXPECT_GE(std::sqrt(vs), std::sqrt(vk) + std::sqrt(vl) - 1e-9);
        for (const auto& phi : {make_power(2), make_normalized_exp(1)}) {
            const double v = outer_polytope(orlicz_sum(K, L, {1, 1}, phi), D).volume();
            EXPECT_LE(phi(std::sqrt(vk / v)) + phi(std::sqrt(vl / v)), 1.0 + 1e-9);
        }
    }
}
