#pragma once

#include "quermass/types.hpp"

namespace quermass {

/// A point of the Grassmannian G(n, j): a j-dimensional linear subspace of
/// R^n, carried by an n x j matrix with orthonormal columns.
class Subspace {
public:
    /// Validates B^T B = I_j within 1e-10.
    explicit Subspace(Mat basis);

    int ambient_dim() const { return static_cast<int>(basis_.rows()); }
    int dim() const { return static_cast<int>(basis_.cols()); }
    const Mat& basis() const { return basis_; }

    /// Coordinates of x (in R^n) with respect to the basis, i.e. B^T x.
    Vec coords(const Vec& x) const { return basis_.transpose() * x; }
    /// The ambient vector B w for coordinates w in R^j.
    Vec ambient(const Vec& w) const { return basis_ * w; }

    /// Span of the first j standard basis vectors.
    static Subspace coordinate(int n, int j);

private:
    Mat basis_;
};

} // namespace quermass
