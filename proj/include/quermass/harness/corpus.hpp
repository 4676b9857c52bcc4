#pragma once

#include <string>
#include <vector>

#include "quermass/bodies.hpp"

namespace quermass::harness {

struct NamedBody {
    std::string name;
    ConvexBody body;
};

/// Bundled bodies of dimension n (2 <= n <= 4): cube, cross-polytope,
/// simplex translated to its centroid, unit ball, an ellipsoid for n <= 3,
/// and five seeded random polytopes ("random-0" .. "random-4").
std::vector<NamedBody> bundled_corpus(int n);

/// Coordinate cube [-s, s]^n.
ConvexBody cube(int n, double s = 1.0);
ConvexBody cross_polytope(int n, double s = 1.0);
/// conv{0, e_1, ..., e_n} shifted so its centroid is the origin.
ConvexBody centered_simplex(int n);
/// Convex hull of seeded Gaussian points, translated by their mean.
ConvexBody random_polytope(int n, int points, unsigned long long seed);

} // namespace quermass::harness
