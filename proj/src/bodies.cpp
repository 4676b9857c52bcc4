#include "quermass/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace quermass {

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(Mat basis) : basis_(std::move(basis))
{
    const int n = static_cast<int>(basis_.rows());
    const int j = static_cast<int>(basis_.cols());
    require(n >= 1 && n <= kMaxDim, "Subspace: ambient dimension must be in [1, 4]");
    require(j >= 1 && j <= n, "Subspace: need 1 <= j <= n");
    const Mat gram = basis_.transpose() * basis_;
    const double err = (gram - Mat::Identity(j, j)).cwiseAbs().maxCoeff();
    require(err <= 1e-10, "Subspace: basis columns are not orthonormal");
}

Subspace Subspace::coordinate(int n, int j)
{
    Mat b = Mat::Zero(n, j);
    for (int i = 0; i < j; ++i) b(i, i) = 1.0;
    return Subspace(b);
}

// --------------------------------------------------------------- Direction

Direction::Direction(Vec coords) : coords_(std::move(coords))
{
    require(coords_.size() >= 1 && coords_.size() <= kMaxDim, "Direction: bad dimension");
    require(std::abs(coords_.norm() - 1.0) <= 1e-12, "Direction: vector is not unit length");
}

Direction Direction::normalized(const Vec& v)
{
    const double len = v.norm();
    require(len > 0.0 && std::isfinite(len), "Direction: cannot normalize a zero vector");
    return Direction(v / len);
}

// --------------------------------------------------------------- LinearMap

LinearMap::LinearMap(Mat matrix) : matrix_(std::move(matrix))
{
    require(matrix_.rows() == matrix_.cols() && matrix_.rows() >= 1 && matrix_.rows() <= kMaxDim,
            "LinearMap: matrix must be square of size 1..4");
    det_ = matrix_.determinant();
    const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
    require(std::abs(det_) > 1e-12 * std::pow(scale, static_cast<double>(matrix_.rows())),
            "LinearMap: matrix is singular");
}

bool LinearMap::is_special() const { return std::abs(det_ - 1.0) <= 1e-10; }

// ---------------------------------------------------------------- Polytope

Polytope Polytope::from_points(const PointList& points, int dim)
{
    const Hull hull = convex_hull(points, dim);
    Polytope p;
    p.dim_ = dim;
    for (int v : hull.vertices) p.vertices_.push_back(points[v]);
    for (const auto& f : hull.facets) p.facets_.push_back({f.normal, f.offset, f.area});
    p.volume_ = hull.volume;
    p.finish();
    return p;
}

Polytope Polytope::from_parts(int dim, PointList vertices, std::vector<PolytopeFacet> facets,
                              double volume)
{
    Polytope p;
    p.dim_ = dim;
    p.vertices_ = std::move(vertices);
    double max_area = 0.0;
    for (const auto& f : facets) max_area = std::max(max_area, f.area);
    for (auto& f : facets)
        if (f.area > 1e-14 * max_area) p.facets_.push_back(std::move(f));
    p.volume_ = volume;
    p.finish();
    return p;
}

void Polytope::finish()
{
    require(!vertices_.empty(), "Polytope: empty vertex list");
    if (facets_.empty()) throw ComputationError("Polytope: no facets");
    double scale = 0.0;
    for (const auto& v : vertices_) scale = std::max(scale, v.cwiseAbs().maxCoeff());
    inradius_ = std::numeric_limits<double>::infinity();
    for (const auto& f : facets_) inradius_ = std::min(inradius_, f.offset);
    require(inradius_ > 1e-12 * scale, "Polytope: origin is not in the interior");
}

double Polytope::support(const Vec& u) const
{
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices_) best = std::max(best, v.dot(u));
    return best;
}

// --------------------------------------------------------------- Ellipsoid

Ellipsoid::Ellipsoid(Mat shape) : shape_(std::move(shape))
{
    require(shape_.rows() == shape_.cols() && shape_.rows() >= 1 && shape_.rows() <= kMaxDim,
            "Ellipsoid: shape must be square of size 1..4");
    const double scale = std::max(1e-300, shape_.cwiseAbs().maxCoeff());
    require((shape_ - shape_.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
            "Ellipsoid: shape matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> eig(shape_);
    const double lo = eig.eigenvalues().minCoeff();
    require(lo > 0.0, "Ellipsoid: shape matrix is not positive definite");
    inradius_ = std::sqrt(lo);
}

// -------------------------------------------------------------- ConvexBody

ConvexBody ConvexBody::polytope(const PointList& points)
{
    require(!points.empty(), "polytope: empty vertex list");
    const int dim = static_cast<int>(points.front().size());
    require(dim >= 1 && dim <= kMaxDim, "polytope: dimension must be in [1, 4]");
    return ConvexBody(dim, Polytope::from_points(points, dim));
}

ConvexBody ConvexBody::polytope(Polytope p)
{
    const int dim = p.dim();
    return ConvexBody(dim, std::move(p));
}

ConvexBody ConvexBody::ellipsoid(const Mat& shape)
{
    Ellipsoid e(shape);
    const int dim = e.dim();
    return ConvexBody(dim, std::move(e));
}

ConvexBody ConvexBody::ball(double radius, int dim)
{
    require(radius > 0.0, "ball: radius must be positive");
    require(dim >= 1 && dim <= kMaxDim, "ball: dimension must be in [1, 4]");
    return ellipsoid(Mat::Identity(dim, dim) * radius * radius);
}

ConvexBody ConvexBody::oracle(SupportOracle o)
{
    require(o.dim >= 1 && o.dim <= kMaxDim, "oracle: dimension must be in [1, 4]");
    require(static_cast<bool>(o.fn), "oracle: missing support function");
    require(o.inradius > 0.0, "oracle: declared inradius must be positive");
    require(o.lipschitz >= o.inradius, "oracle: Lipschitz bound below inradius");
    const int dim = o.dim;
    return ConvexBody(dim, std::move(o));
}

const Polytope& ConvexBody::as_polytope() const
{
    if (const auto* p = std::get_if<Polytope>(&rep_)) return *p;
    throw InvalidInput("body is not a polytope");
}

const Ellipsoid& ConvexBody::as_ellipsoid() const
{
    if (const auto* e = std::get_if<Ellipsoid>(&rep_)) return *e;
    throw InvalidInput("body is not an ellipsoid");
}

double ConvexBody::h(const Vec& u) const
{
    switch (rep_.index()) {
    case 0: return std::get<Polytope>(rep_).support(u);
    case 1: return std::get<Ellipsoid>(rep_).support(u);
    default: return std::get<SupportOracle>(rep_).fn(u);
    }
}

double ConvexBody::inradius() const
{
    switch (rep_.index()) {
    case 0: return std::get<Polytope>(rep_).inradius();
    case 1: return std::get<Ellipsoid>(rep_).inradius();
    default: return std::get<SupportOracle>(rep_).inradius;
    }
}

double ConvexBody::circumradius() const
{
    switch (rep_.index()) {
    case 0: {
        double r = 0.0;
        for (const auto& v : std::get<Polytope>(rep_).vertices()) r = std::max(r, v.norm());
        return r;
    }
    case 1: {
        Eigen::SelfAdjointEigenSolver<Mat> eig(std::get<Ellipsoid>(rep_).shape());
        return std::sqrt(eig.eigenvalues().maxCoeff());
    }
    default: return std::get<SupportOracle>(rep_).lipschitz;
    }
}

std::string ConvexBody::kind_name() const
{
    switch (rep_.index()) {
    case 0: return "polytope";
    case 1: return "ellipsoid";
    default: return "oracle";
    }
}

// -------------------------------------------------------------- operations

DirectionSet direction_set(int dim, int count)
{
    require(dim >= 1 && dim <= kMaxDim, "direction_set: dimension must be in [1, 4]");
    DirectionSet dirs;
    if (dim == 1) {
        dirs.push_back(make_vec({1.0}));
        dirs.push_back(make_vec({-1.0}));
        return dirs;
    }
    require(count >= 2 * dim, "direction_set: too few directions");
    dirs.reserve(count);
    if (dim == 2) {
        for (int k = 0; k < count; ++k) {
            const double t = 2.0 * std::numbers::pi * k / count;
            dirs.push_back(make_vec({std::cos(t), std::sin(t)}));
        }
    } else if (dim == 3) {
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < count; ++k) {
            const double z = 1.0 - (2.0 * k + 1.0) / count;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double t = golden * k;
            dirs.push_back(make_vec({r * std::cos(t), r * std::sin(t), z}));
        }
    } else {
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + static_cast<unsigned long long>(count));
        std::normal_distribution<double> gauss;
        while (static_cast<int>(dirs.size()) < count) {
            Vec v(dim);
            for (int i = 0; i < dim; ++i) v(i) = gauss(rng);
            const double len = v.norm();
            if (len > 1e-8) dirs.push_back(v / len);
        }
    }
    return dirs;
}

double support(const ConvexBody& body, const Direction& u)
{
    require(u.dim() == body.dim(), "support: dimension mismatch");
    return body.h(u.coords());
}

ConvexBody apply_linear(const ConvexBody& body, const LinearMap& T)
{
    require(T.dim() == body.dim(), "apply_linear: dimension mismatch");
    const Mat& A = T.matrix();
    switch (body.rep().index()) {
    case 0: {
        PointList pts;
        for (const auto& v : body.as_polytope().vertices()) pts.push_back(A * v);
        return ConvexBody::polytope(pts);
    }
    case 1: {
        Mat m = A * body.as_ellipsoid().shape() * A.transpose();
        m = 0.5 * (m + m.transpose());
        return ConvexBody::ellipsoid(m);
    }
    default: {
        const auto& o = std::get<SupportOracle>(body.rep());
        auto inner = std::make_shared<const SupportOracle>(o);
        const Mat At = A.transpose();
        Eigen::JacobiSVD<Mat> svd(A);
        const double smax = svd.singularValues().maxCoeff();
        const double smin = svd.singularValues().minCoeff();
        SupportOracle out;
        out.dim = o.dim;
        out.fn = [inner, At](const Vec& u) {
            const Vec w = At * u;
            const double len = w.norm();
            return len * inner->fn(w / len);
        };
        out.lipschitz = o.lipschitz * smax;
        out.inradius = o.inradius * smin;
        out.label = "linear(" + o.label + ")";
        return ConvexBody::oracle(std::move(out));
    }
    }
}

ConvexBody project(const ConvexBody& body, const Subspace& xi)
{
    require(xi.ambient_dim() == body.dim(), "project: dimension mismatch");
    const Mat& B = xi.basis();
    const int j = xi.dim();
    switch (body.rep().index()) {
    case 0: {
        PointList pts;
        const auto& verts = body.as_polytope().vertices();
        pts.reserve(verts.size());
        for (const auto& v : verts) pts.push_back(B.transpose() * v);
        return ConvexBody::polytope(Polytope::from_points(pts, j));
    }
    case 1: {
        Mat m = B.transpose() * body.as_ellipsoid().shape() * B;
        m = 0.5 * (m + m.transpose());
        return ConvexBody::ellipsoid(m);
    }
    default: {
        const auto& o = std::get<SupportOracle>(body.rep());
        auto inner = std::make_shared<const SupportOracle>(o);
        SupportOracle out;
        out.dim = j;
        out.fn = [inner, B](const Vec& w) { return inner->fn(B * w); };
        out.lipschitz = o.lipschitz;
        out.inradius = o.inradius;
        out.label = "projection(" + o.label + ")";
        return ConvexBody::oracle(std::move(out));
    }
    }
}

double hausdorff_distance(const ConvexBody& K, const ConvexBody& L, const DirectionSet& dirs)
{
    require(K.dim() == L.dim(), "hausdorff_distance: dimension mismatch");
    double d = 0.0;
    for (const auto& u : dirs) d = std::max(d, std::abs(K.h(u) - L.h(u)));
    return d;
}

double sublinearity_violation(const ConvexBody& body, int pairs, unsigned long long seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    const int n = body.dim();
    auto draw = [&] {
        Vec v(n);
        for (int i = 0; i < n; ++i) v(i) = gauss(rng);
        return Vec(v / v.norm());
    };
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < pairs; ++k) {
        const Vec u = draw(), v = draw();
        const Vec s = u + v;
        const double len = s.norm();
        if (len < 1e-8) continue;
        worst = std::max(worst, len * body.h(s / len) - body.h(u) - body.h(v));
    }
    return worst;
}

ConvexBody dilate(const ConvexBody& body, double c)
{
    require(c > 0.0, "dilate: factor must be positive");
    const int n = body.dim();
    switch (body.rep().index()) {
    case 0: {
        const auto& p = body.as_polytope();
        PointList verts;
        for (const auto& v : p.vertices()) verts.push_back(c * v);
        std::vector<PolytopeFacet> facets;
        const double area_scale = std::pow(c, n - 1);
        for (const auto& f : p.facets()) facets.push_back({f.normal, c * f.offset, area_scale * f.area});
        return ConvexBody::polytope(
            Polytope::from_parts(n, std::move(verts), std::move(facets), std::pow(c, n) * p.volume()));
    }
    case 1: return ConvexBody::ellipsoid(c * c * body.as_ellipsoid().shape());
    default: {
        const auto& o = std::get<SupportOracle>(body.rep());
        auto inner = std::make_shared<const SupportOracle>(o);
        SupportOracle out;
        out.dim = n;
        out.fn = [inner, c](const Vec& u) { return c * inner->fn(u); };
        out.lipschitz = c * o.lipschitz;
        out.inradius = c * o.inradius;
        out.label = "dilate(" + o.label + ")";
        return ConvexBody::oracle(std::move(out));
    }
    }
}

} // namespace quermass
