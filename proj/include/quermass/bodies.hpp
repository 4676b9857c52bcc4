#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "quermass/hull.hpp"
#include "quermass/subspace.hpp"
#include "quermass/types.hpp"

namespace quermass {

/// A unit vector of R^n (norm within 1e-12 of one).
class Direction {
public:
    explicit Direction(Vec coords);
    static Direction normalized(const Vec& v);

    const Vec& coords() const { return coords_; }
    int dim() const { return static_cast<int>(coords_.size()); }

private:
    Vec coords_;
};

/// Invertible n x n matrix with its determinant cached.
class LinearMap {
public:
    explicit LinearMap(Mat matrix);

    const Mat& matrix() const { return matrix_; }
    double det() const { return det_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }
    /// |det - 1| <= 1e-10
    bool is_special() const;

private:
    Mat matrix_;
    double det_;
};

struct PolytopeFacet {
    Vec normal;
    double offset = 0.0;
    double area = 0.0;
};

/// Full-dimensional polytope containing the origin in its interior, stored
/// with its extreme points and merged facets.
class Polytope {
public:
    /// Convex hull of `points`; redundant points are dropped.
    static Polytope from_points(const PointList& points, int dim);
    /// Assemble from an already known vertex/facet description. Facets with
    /// zero area are dropped.
    static Polytope from_parts(int dim, PointList vertices, std::vector<PolytopeFacet> facets,
                               double volume);

    int dim() const { return dim_; }
    const PointList& vertices() const { return vertices_; }
    const std::vector<PolytopeFacet>& facets() const { return facets_; }
    /// Volume from the cone (simplex) decomposition of the hull.
    double volume() const { return volume_; }
    /// Distance from the origin to the nearest facet hyperplane.
    double inradius() const { return inradius_; }
    double support(const Vec& u) const;

private:
    Polytope() = default;
    void finish();

    int dim_ = 0;
    PointList vertices_;
    std::vector<PolytopeFacet> facets_;
    double volume_ = 0.0;
    double inradius_ = 0.0;
};

/// Ellipsoid with support function h(u) = sqrt(u^T M u) for an SPD shape M.
class Ellipsoid {
public:
    explicit Ellipsoid(Mat shape);

    int dim() const { return static_cast<int>(shape_.rows()); }
    const Mat& shape() const { return shape_; }
    double support(const Vec& u) const { return std::sqrt(u.dot(shape_ * u)); }
    double inradius() const { return inradius_; }

private:
    Mat shape_;
    double inradius_;
};

/// A body known only through its support function on the unit sphere.
struct SupportOracle {
    int dim = 0;
    std::function<double(const Vec&)> fn;
    double lipschitz = 0.0; ///< declared bound, equal to the circumradius
    double inradius = 0.0;  ///< declared lower bound of h on the sphere
    std::string label;
};

/// A convex body of R^n (1 <= n <= 4) with the origin in its interior.
/// Immutable once built; copies are cheap to share read-only.
class ConvexBody {
public:
    using Rep = std::variant<Polytope, Ellipsoid, SupportOracle>;

    static ConvexBody polytope(const PointList& points);
    static ConvexBody polytope(Polytope p);
    static ConvexBody ellipsoid(const Mat& shape);
    static ConvexBody ball(double radius, int dim);
    static ConvexBody oracle(SupportOracle o);

    int dim() const { return dim_; }
    const Rep& rep() const { return rep_; }

    bool is_polytope() const { return std::holds_alternative<Polytope>(rep_); }
    bool is_ellipsoid() const { return std::holds_alternative<Ellipsoid>(rep_); }
    bool is_oracle() const { return std::holds_alternative<SupportOracle>(rep_); }
    const Polytope& as_polytope() const;
    const Ellipsoid& as_ellipsoid() const;

    /// Support value at a unit vector; the argument is not re-validated.
    double h(const Vec& u) const;
    double inradius() const;
    /// Upper bound on the support function over the sphere.
    double circumradius() const;
    std::string kind_name() const;

private:
    ConvexBody(int dim, Rep rep) : dim_(dim), rep_(std::move(rep)) {}

    int dim_;
    Rep rep_;
};

using DirectionSet = std::vector<Vec>;

/// Deterministic unit directions covering S^{n-1}: {+1,-1} for n = 1,
/// N equally spaced angles for n = 2, a Fibonacci sphere for n = 3 and
/// normalized Gaussian samples (fixed seed) for n >= 4.
DirectionSet direction_set(int dim, int count);

double support(const ConvexBody& body, const Direction& u);

/// The image TK. Oracles follow h_{TK}(u) = |T^T u| h_K(T^T u / |T^T u|).
ConvexBody apply_linear(const ConvexBody& body, const LinearMap& T);

/// K|xi expressed in the coordinates of the subspace basis.
ConvexBody project(const ConvexBody& body, const Subspace& xi);

/// Max of |h_K - h_L| over the sampled directions; a lower bound on the
/// Hausdorff distance that converges as the set is refined.
double hausdorff_distance(const ConvexBody& K, const ConvexBody& L, const DirectionSet& dirs);

/// Largest sampled violation of subadditivity,
/// max over pairs of  |u+v| h((u+v)/|u+v|) - h(u) - h(v)  (<= 0 for a support function).
double sublinearity_violation(const ConvexBody& body, int pairs, unsigned long long seed);

/// Uniformly scaled copy cK (c > 0).
ConvexBody dilate(const ConvexBody& body, double c);

} // namespace quermass
