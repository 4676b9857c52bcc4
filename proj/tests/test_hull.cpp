#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "quermass/hull.hpp"

using namespace quermass;

namespace {

PointList cube_points(int d, double s = 1.0)
{
    PointList pts;
    for (int mask = 0; mask < (1 << d); ++mask) {
        Vec v(d);
        for (int i = 0; i < d; ++i) v(i) = (mask >> i) & 1 ? s : -s;
        pts.push_back(v);
    }
    return pts;
}

PointList cross_points(int d, double s = 1.0)
{
    PointList pts;
    for (int i = 0; i < d; ++i)
        for (double sign : {1.0, -1.0}) {
            Vec v = Vec::Zero(d);
            v(i) = sign * s;
            pts.push_back(v);
        }
    return pts;
}

void expect_closed(const Hull& h, double tol = 1e-9)
{
    Vec s = Vec::Zero(h.dim);
    for (const auto& f : h.facets) s += f.area * f.normal;
    EXPECT_LT(s.norm(), tol);
}

} // namespace

TEST(Hull, Square)
{
    const Hull h = convex_hull(cube_points(2), 2);
    EXPECT_EQ(h.facets.size(), 4u);
    EXPECT_NEAR(h.volume, 4.0, 1e-12);
    for (const auto& f : h.facets) {
        EXPECT_NEAR(f.area, 2.0, 1e-12);
        EXPECT_NEAR(f.offset, 1.0, 1e-12);
    }
    expect_closed(h);
}

TEST(Hull, TriangleEdges)
{
    const PointList pts = {make_vec({2, 0}), make_vec({0, 2}), make_vec({-1, -1})};
    const Hull h = convex_hull(pts, 2);
    ASSERT_EQ(h.facets.size(), 3u);
    std::vector<double> lengths;
    for (const auto& f : h.facets) lengths.push_back(f.area);
    std::sort(lengths.begin(), lengths.end());
    EXPECT_NEAR(lengths[0], 2.0 * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(lengths[1], std::sqrt(10.0), 1e-12);
    EXPECT_NEAR(lengths[2], std::sqrt(10.0), 1e-12);
    EXPECT_NEAR(h.volume, 4.0, 1e-12);
    expect_closed(h);
}

TEST(Hull, CollinearPointsDropped)
{
    PointList pts = cube_points(2);
    pts.push_back(make_vec({1, 0}));
    pts.push_back(make_vec({0, -1}));
    pts.push_back(make_vec({0.2, 0.3}));
    const Hull h = convex_hull(pts, 2);
    EXPECT_EQ(h.vertices.size(), 4u);
    EXPECT_EQ(h.facets.size(), 4u);
}

TEST(Hull, CubeWithFacePointsMergesFacets)
{
    PointList pts = cube_points(3);
    for (int i = -2; i <= 2; ++i)
        for (int k = -2; k <= 2; ++k) {
            pts.push_back(make_vec({0.5 * i, 0.5 * k, 1.0}));
            pts.push_back(make_vec({1.0, 0.5 * i, 0.5 * k}));
            pts.push_back(make_vec({0.25 * i, 0.1 * k, 0.0}));
        }
    const Hull h = convex_hull(pts, 3);
    EXPECT_EQ(h.facets.size(), 6u);
    EXPECT_NEAR(h.volume, 8.0, 1e-10);
    for (const auto& f : h.facets) EXPECT_NEAR(f.area, 4.0, 1e-10);
    expect_closed(h);
}

TEST(Hull, Tesseract)
{
    const Hull h = convex_hull(cube_points(4), 4);
    EXPECT_EQ(h.facets.size(), 8u);
    EXPECT_EQ(h.vertices.size(), 16u);
    EXPECT_NEAR(h.volume, 16.0, 1e-10);
    for (const auto& f : h.facets) EXPECT_NEAR(f.area, 8.0, 1e-10);
    expect_closed(h);
}

TEST(Hull, CrossPolytope4)
{
    // 16 regular tetrahedral facets of edge sqrt(2), each of volume 1/3.
    const Hull h = convex_hull(cross_points(4), 4);
    EXPECT_EQ(h.facets.size(), 16u);
    EXPECT_NEAR(h.volume, 16.0 / 24.0, 1e-12);
    for (const auto& f : h.facets) EXPECT_NEAR(f.area, 1.0 / 3.0, 1e-12);
    expect_closed(h);
}

TEST(Hull, SimplexVolumeMatchesDeterminant)
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (int d = 2; d <= 4; ++d) {
        PointList pts;
        Mat m(d, d);
        for (int k = 0; k <= d; ++k) {
            Vec v(d);
            for (int i = 0; i < d; ++i) v(i) = g(rng);
            pts.push_back(v);
        }
        for (int k = 0; k < d; ++k) m.col(k) = pts[k + 1] - pts[0];
        const double expected = std::abs(m.determinant()) / std::tgamma(d + 1.0);
        EXPECT_NEAR(convex_hull(pts, d).volume, expected, 1e-10 * std::max(1.0, expected)) << d;
    }
}

TEST(Hull, RandomCloudContainsAllPoints)
{
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int d = 3; d <= 4; ++d) {
        PointList pts;
        for (int k = 0; k < 400; ++k) {
            Vec v(d);
            for (int i = 0; i < d; ++i) v(i) = g(rng);
            pts.push_back(v);
        }
        const Hull h = convex_hull(pts, d);
        for (const auto& f : h.facets)
            for (const auto& p : pts) EXPECT_LE(f.normal.dot(p), f.offset + 1e-9);
        expect_closed(h, 1e-8);
    }
}

TEST(Hull, SphereVolumeConverges)
{
    auto deficit = [](int N) {
        PointList pts;
        const double golden = M_PI * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < N; ++k) {
            const double z = 1.0 - (2.0 * k + 1.0) / N, r = std::sqrt(1.0 - z * z);
            pts.push_back(make_vec({r * std::cos(golden * k), r * std::sin(golden * k), z}));
        }
        const Hull h = convex_hull(pts, 3);
        EXPECT_EQ(h.vertices.size(), static_cast<std::size_t>(N));
        return 4.0 * M_PI / 3.0 - h.volume;
    };
    // Inscribed polytopes: the deficit is positive and decays like 1/N.
    const double d1 = deficit(1000), d4 = deficit(4000);
    EXPECT_GT(d4, 0.0);
    EXPECT_LT(d4, 2e-3 * 4.0 * M_PI / 3.0);
    EXPECT_NEAR(d1 / d4, 4.0, 0.4);
}

TEST(Hull, DegenerateInputThrows)
{
    const PointList flat = {make_vec({0, 0, 0}), make_vec({1, 0, 0}), make_vec({0, 1, 0}),
                            make_vec({1, 1, 0})};
    EXPECT_THROW(convex_hull(flat, 3), ComputationError);
    EXPECT_EQ(hull_volume_or_zero(flat, 3), 0.0);
    const PointList line = {make_vec({0, 0}), make_vec({1, 1}), make_vec({2, 2})};
    EXPECT_THROW(convex_hull(line, 2), ComputationError);
}

TEST(Hull, OneDimensional)
{
    const Hull h = convex_hull({make_vec({-0.5}), make_vec({2.0}), make_vec({1.0})}, 1);
    EXPECT_NEAR(h.volume, 2.5, 1e-15);
    EXPECT_EQ(h.facets.size(), 2u);
}

TEST(GeneralizedCross, OrthogonalToRows)
{
    Mat rows(2, 3);
    rows << 1, 2, 3, -1, 0, 4;
    const Vec n = generalized_cross(rows);
    EXPECT_NEAR(n.dot(rows.row(0).transpose()), 0.0, 1e-12);
    EXPECT_NEAR(n.dot(rows.row(1).transpose()), 0.0, 1e-12);
    const Vec c = rows.row(0).transpose().head<3>().cross(rows.row(1).transpose().head<3>());
    EXPECT_NEAR(n.norm(), c.norm(), 1e-12);
}
