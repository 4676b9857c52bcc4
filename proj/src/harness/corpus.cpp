#include "quermass/harness/corpus.hpp"

#include <random>

namespace quermass::harness {

ConvexBody cube(int n, double s)
{
    PointList pts;
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v(i) = (mask >> i) & 1 ? s : -s;
        pts.push_back(v);
    }
    return ConvexBody::polytope(pts);
}

ConvexBody cross_polytope(int n, double s)
{
    PointList pts;
    for (int i = 0; i < n; ++i)
        for (double sign : {1.0, -1.0}) {
            Vec v = Vec::Zero(n);
            v(i) = sign * s;
            pts.push_back(v);
        }
    return ConvexBody::polytope(pts);
}

ConvexBody centered_simplex(int n)
{
    PointList pts(1, Vec::Zero(n));
    for (int i = 0; i < n; ++i) pts.push_back(Vec::Unit(n, i));
    const Vec c = Vec::Constant(n, 1.0 / (n + 1));
    for (auto& p : pts) p -= c;
    return ConvexBody::polytope(pts);
}

ConvexBody random_polytope(int n, int points, unsigned long long seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    PointList pts(points, Vec(n));
    Vec mean = Vec::Zero(n);
    for (auto& p : pts) {
        for (int i = 0; i < n; ++i) p(i) = g(rng);
        mean += p;
    }
    mean /= points;
    for (auto& p : pts) p -= mean;
    return ConvexBody::polytope(pts);
}

std::vector<NamedBody> bundled_corpus(int n)
{
    require(n >= 2 && n <= 4, "bundled_corpus: n must be 2, 3 or 4");
    std::vector<NamedBody> out;
    out.push_back({"cube", cube(n)});
    out.push_back({"cross", cross_polytope(n)});
    out.push_back({"simplex", centered_simplex(n)});
    out.push_back({"ball", ConvexBody::ball(1.0, n)});
    if (n == 2) {
        Mat m(2, 2);
        m << 1.0, 0.5, 0.5, 2.0;
        out.push_back({"ellipsoid", ConvexBody::ellipsoid(m)});
    } else if (n == 3) {
        out.push_back({"ellipsoid", ConvexBody::ellipsoid(make_vec({1.0, 4.0, 9.0}).asDiagonal().toDenseMatrix())});
    }
    for (int k = 0; k < 5; ++k)
        out.push_back({"random-" + std::to_string(k),
                       random_polytope(n, 6 + 4 * n, 1000ULL * n + static_cast<unsigned long long>(k))});
    return out;
}

} // namespace quermass::harness
