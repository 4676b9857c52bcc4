#pragma once

#include <vector>

#include "quermass/types.hpp"

namespace quermass {

/// One facet of a convex hull. Coplanar simplices produced by the
/// triangulating hull are merged, so `normal` is unique per facet.
struct HullFacet {
    Vec normal;                ///< outward unit normal
    double offset = 0.0;       ///< <normal, x> = offset for x on the facet
    double area = 0.0;         ///< (d-1)-dimensional volume
    std::vector<int> vertices; ///< indices into the input point list
};

struct Hull {
    int dim = 0;
    std::vector<int> vertices; ///< sorted indices of the extreme points
    std::vector<HullFacet> facets;
    double volume = 0.0;       ///< cone decomposition from `interior`
    Vec interior;
};

/// Convex hull of a full-dimensional point set in dimension 1 <= dim <= 4.
///
/// Dimension 2 uses a monotone chain. Dimensions 3 and 4 use quickhull on a
/// slightly joggled copy of the input to make every predicate decision
/// non-degenerate; all reported geometry (normals, areas, volume) is then
/// recomputed from the original coordinates.
///
/// Throws ComputationError if the points are affinely lower dimensional.
Hull convex_hull(const PointList& points, int dim);

/// d-volume of conv(points), or 0 when the set is lower dimensional.
double hull_volume_or_zero(const PointList& points, int dim);

/// Vector n with <n, x> = det[rows; x] for the (d-1) x d matrix `rows`.
/// Its norm is the (d-1)-volume of the parallelotope spanned by the rows.
Vec generalized_cross(const Mat& rows);

} // namespace quermass
