#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "quermass/orlicz.hpp"

using namespace quermass;

namespace {

ConvexBody square(double s = 1.0)
{
    return ConvexBody::polytope({make_vec({s, s}), make_vec({-s, s}), make_vec({-s, -s}), make_vec({s, -s})});
}

double bisect(double hK, double hL, double a, double b, const OrliczFunction& phi)
{
    double lo = 1e-6, hi = 1e6;
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        (a * phi(hK / mid) + b * phi(hL / mid) > 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST(Power, Examples)
{
    const auto p1 = make_power(1.0);
    EXPECT_DOUBLE_EQ(p1(2.0), 2.0);
    EXPECT_DOUBLE_EQ(p1.left_derivative_at_one(), 1.0);
    EXPECT_FALSE(p1.strictly_convex());
    const auto p2 = make_power(2.0);
    EXPECT_DOUBLE_EQ(p2(3.0), 9.0);
    EXPECT_DOUBLE_EQ(p2.inverse(0.25), 0.5);
    EXPECT_TRUE(p2.strictly_convex());
    EXPECT_THROW(make_power(0.5), InvalidInput);
}

TEST(NormalizedExp, Examples)
{
    const auto e1 = make_normalized_exp(1.0);
    EXPECT_NEAR(e1(1.0), 1.0, 1e-15);
    EXPECT_EQ(e1(0.0), 0.0);
    EXPECT_NEAR(e1(0.5), (std::sqrt(M_E) - 1.0) / (M_E - 1.0), 1e-15);
    EXPECT_NEAR(e1(0.5), 0.37754, 1e-5);
    EXPECT_NEAR(e1.left_derivative_at_one(), M_E / (M_E - 1.0), 1e-15);
    EXPECT_NEAR(e1(e1.inverse(0.3)), 0.3, 1e-15);
    EXPECT_THROW(make_normalized_exp(0.0), InvalidInput);
}

TEST(ClassMembership, BuiltInsAndCustom)
{
    for (const auto& phi : {make_power(1), make_power(2), make_power(3.5), make_normalized_exp(0.1),
                            make_normalized_exp(1), make_normalized_exp(3)})
        EXPECT_TRUE(class_report(phi).ok()) << phi.name();
    const auto concave = OrliczFunction::custom("sqrt", [](double t) { return std::sqrt(t); }, 0.5, false);
    EXPECT_FALSE(class_report(concave).ok());
    const auto cubic = OrliczFunction::custom("cube", [](double t) { return t * t * t; }, 3.0, true);
    EXPECT_TRUE(class_report(cubic).ok());
    EXPECT_NEAR(cubic.inverse(0.125), 0.5, 1e-15);
}

TEST(Solver, ClosedForms)
{
    const auto lin = make_power(1), sq = make_power(2);
    EXPECT_NEAR(solve_orlicz_support(1, 2, {1, 1}, lin), 3.0, 1e-14);
    EXPECT_NEAR(solve_orlicz_support(1, 1, {1, 1}, sq), std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(solve_orlicz_support(2, 1, {1, 3}, sq), std::sqrt(7.0), 1e-14);
}

TEST(Solver, ResidualAndBracketProperties)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> h(0.01, 10.0), w(0.001, 5.0), p(1.0, 6.0), al(0.05, 4.0);
    for (int k = 0; k < 3000; ++k) {
        const auto phi = k % 2 ? make_power(p(rng)) : make_normalized_exp(al(rng));
        const double hK = h(rng), hL = h(rng);
        const CombinationWeights cw(w(rng), w(rng));
        const OrliczRoot r = solve_orlicz_root(hK, hL, cw, phi);
        EXPECT_LE(std::abs(cw.a * phi(hK / r.lambda) + cw.b * phi(hL / r.lambda) - 1.0), 1e-12);
        EXPECT_LE(r.bracket_lo, r.lambda);
        EXPECT_GE(r.bracket_hi, r.lambda);
        EXPECT_GE(cw.a * phi(hK / r.bracket_lo) + cw.b * phi(hL / r.bracket_lo) - 1.0, 0.0);
        EXPECT_LE(cw.a * phi(hK / r.bracket_hi) + cw.b * phi(hL / r.bracket_hi) - 1.0, 0.0);
    }
}

TEST(Solver, MatchesIndependentBisection)
{
    const auto e1 = make_normalized_exp(1.0);
    for (double hK : {0.3, 1.0, 4.0})
        for (double hL : {0.5, 2.0})
            for (double b : {0.01, 0.5, 3.0}) {
                const double ref = bisect(hK, hL, 1.0, b, e1);
                EXPECT_NEAR(solve_orlicz_support(hK, hL, {1.0, b}, e1), ref, 1e-12 * ref);
            }
}

TEST(Solver, RejectsBadInput)
{
    EXPECT_THROW(solve_orlicz_support(0.0, 1.0, {1, 1}, make_power(2)), InvalidInput);
    EXPECT_THROW(CombinationWeights(1.0, 0.0), InvalidInput);
}

TEST(OrliczSum, MinkowskiAndFireyCases)
{
    const ConvexBody K = square();
    const ConvexBody L = ConvexBody::ellipsoid((make_vec({4.0, 1.0})).asDiagonal().toDenseMatrix());
    const auto dirs = direction_set(2, 200);
    const ConvexBody mink = orlicz_sum(K, L, {1, 1}, make_power(1));
    const ConvexBody firey = orlicz_sum(K, L, {0.7, 2.0}, make_power(3));
    for (const auto& u : dirs) {
        EXPECT_NEAR(mink.h(u), K.h(u) + L.h(u), 1e-10);
        EXPECT_NEAR(firey.h(u), std::cbrt(0.7 * std::pow(K.h(u), 3) + 2.0 * std::pow(L.h(u), 3)), 1e-10);
    }
}

TEST(OrliczSum, EqualBodies)
{
    const ConvexBody K = square();
    const auto e1 = make_normalized_exp(1.0);
    const ConvexBody s = orlicz_sum(K, K, {1, 1}, e1);
    // 2 phi(h / lambda) = 1
    const double scale = 1.0 / bisect(1.0, 1.0, 1.0, 1.0, e1);
    EXPECT_NEAR(1.0 / e1.inverse(0.5), 1.0 / scale, 1e-12);
    for (const auto& u : direction_set(2, 100)) EXPECT_NEAR(s.h(u), K.h(u) / e1.inverse(0.5), 1e-12);
}

TEST(OrliczSum, HomogeneityAndSublinearity)
{
    const ConvexBody K = ConvexBody::polytope({make_vec({2, 0, 0}), make_vec({0, 2, 0}), make_vec({0, 0, 2}),
                                               make_vec({-1, -1, -1})});
    const ConvexBody L = ConvexBody::ball(1.0, 3);
    const auto phi = make_normalized_exp(1.5);
    const ConvexBody s = orlicz_sum(K, L, {1.0, 0.4}, phi);
    const ConvexBody sc = orlicz_sum(dilate(K, 3.0), dilate(L, 3.0), {1.0, 0.4}, phi);
    for (const auto& u : direction_set(3, 300)) EXPECT_NEAR(sc.h(u), 3.0 * s.h(u), 1e-10);
    EXPECT_LE(sublinearity_violation(s, 2000, 4), 1e-9);
    EXPECT_GE(s.inradius(), 0.0);
    for (const auto& u : direction_set(3, 300)) {
        EXPECT_GE(s.h(u), s.inradius() - 1e-12);
        EXPECT_LE(s.h(u), s.circumradius() + 1e-12);
    }
}

TEST(OrliczSum, HausdorffContinuity)
{
    const ConvexBody K = square();
    const ConvexBody L = ConvexBody::ball(1.0, 2);
    const auto dirs = direction_set(2, 512);
    for (const auto& phi : {make_power(1), make_power(2), make_normalized_exp(1)}) {
        double prev = std::numeric_limits<double>::infinity();
        double c = 0.0;
        for (double eps = 1e-1; eps > 1e-6 * 0.99; eps /= 10) {
            const double d = hausdorff_distance(orlicz_sum(K, L, {1, eps}, phi), K, dirs);
            EXPECT_LT(d, prev);
            prev = d;
            c = std::max(c, d / eps);
        }
        EXPECT_LT(c, 10.0) << phi.name();
    }
}

TEST(ProjectionLemma, SumCommutesWithProjection)
{
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    PointList a, b;
    for (int k = 0; k < 15; ++k) {
        a.push_back(make_vec({g(rng), g(rng), g(rng)}));
        b.push_back(make_vec({g(rng), g(rng), g(rng)}));
    }
    for (int i = 0; i < 3; ++i)
        for (double s : {1.0, -1.0}) {
            Vec v = Vec::Zero(3);
            v(i) = s;
            a.push_back(v);
            b.push_back(0.7 * v);
        }
    const ConvexBody K = ConvexBody::polytope(a), L = ConvexBody::polytope(b);
    for (int trial = 0; trial < 10; ++trial) {
        Mat m(3, 2);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 2; ++c) m(r, c) = g(rng);
        const Mat q = Eigen::HouseholderQR<Mat>(m).householderQ();
        const Subspace xi(q.leftCols(2));
        for (const auto& phi : {make_power(1), make_power(2), make_normalized_exp(1)})
            EXPECT_TRUE(check_orlicz_sum_projection(K, L, 0.5, phi, xi, direction_set(2, 64)));
    }
    const ConvexBody B = ConvexBody::ball(1.0, 3);
    const Subspace xi = Subspace::coordinate(3, 2);
    EXPECT_LE(orlicz_projection_discrepancy(B, B, 1.0, make_power(2), xi, direction_set(2, 64)), 1e-12);
    const ConvexBody projected = project(orlicz_sum(B, B, {1, 1}, make_power(2)), xi);
    EXPECT_NEAR(projected.h(make_vec({1, 0})), 1.0 / make_power(2).inverse(0.5), 1e-12);
}
