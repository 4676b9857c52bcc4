#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "quermass/bodies.hpp"
#include "quermass/mixed_volumes.hpp"
#include "quermass/orlicz.hpp"
#include "quermass/stats.hpp"
#include "quermass/unit_ball.hpp"

namespace quermass {

/// Independent generator for draw `index` of the stream `seed` (splitmix64
/// mixing of the pair), so draws can be produced in any order.
std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index);

/// Orthonormalized n x j standard Gaussian matrix; rank-deficient draws are
/// repeated.
Subspace sample_haar(int n, int j, std::mt19937_64& rng);

/// A fixed list of Haar subspaces shared by every estimator evaluated on it.
class GrassmannSample {
public:
    GrassmannSample(int n, int j, std::size_t count, std::uint64_t seed);
    /// The single point of G(n, n), carried by the identity basis.
    static GrassmannSample full(int n);

    int ambient_dim() const { return n_; }
    int dim() const { return j_; }
    std::size_t size() const { return xi_.size(); }
    std::uint64_t seed() const { return seed_; }
    const Subspace& operator[](std::size_t i) const { return xi_[i]; }

private:
    GrassmannSample() = default;

    int n_ = 0, j_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<Subspace> xi_;
};

/// Evaluates `fn(xi, out)` on every subspace of the sample in parallel, where
/// out points at `width` doubles; returns one column per output slot.
std::vector<std::vector<double>> sample_columns(
    const GrassmannSample& sample, int width,
    const std::function<void(const Subspace&, double*)>& fn);

/// Per-sample direction count inside a j-dimensional subspace.
int default_sample_directions(int j);

/// Vol_j(K|xi). Oracle bodies are replaced by their outer polytope over `dirs`
/// (directions in subspace coordinates).
double projected_volume(const ConvexBody& K, const Subspace& xi, const DirectionSet& dirs);

/// K|xi as a polytope; K must be a polytope.
Polytope projected_polytope(const ConvexBody& K, const Subspace& xi);

/// V_phi(P, L|xi) in subspace coordinates for a polytope P of the subspace,
/// using h_{L|xi}(w) = h_L(B w).
double subspace_orlicz_mixed_volume(const Polytope& P, const ConvexBody& L, const Subspace& xi,
                                    const OrliczFunction& phi);

/// Outer polytope, in subspace coordinates, of K|xi +phi w L|xi, over `dirs`
/// augmented with the facet normals of the projected bodies.
Polytope projected_orlicz_sum(const ConvexBody& K, const ConvexBody& L, const CombinationWeights& w,
                              const OrliczFunction& phi, const Subspace& xi, const DirectionSet& dirs);

/// Phi_{n-j}(K) = (omega_n / omega_j) (mean of Vol_j(K|xi)^{-n})^{-1/n}.
/// raw_mean is the mean of Vol_j^{-n}.
Estimate affine_quermassintegral(const ConvexBody& K, const GrassmannSample& sample, int dirs = 0);
/// j = n returns V(K) and j = 0 returns omega_n without sampling.
Estimate affine_quermassintegral(const ConvexBody& K, int j, std::size_t samples, std::uint64_t seed);

/// Phi_{phi,n-j}(K, L) = (omega_n / omega_j) (mean of V_phi(K|xi, L|xi) Vol_j(K|xi)^{-n-1})^{-1/n}.
/// K must be a polytope. raw_mean is the mean of the integrand.
Estimate orlicz_mixed_affine_quermassintegral(const ConvexBody& K, const ConvexBody& L,
                                              const OrliczFunction& phi, const GrassmannSample& sample);
/// j = n is evaluated without sampling: Phi^{-n} = V_phi(K, L) V(K)^{-n-1}.
Estimate orlicz_mixed_affine_quermassintegral(const ConvexBody& K, const ConvexBody& L,
                                              const OrliczFunction& phi, int j, std::size_t samples,
                                              std::uint64_t seed);

/// Same pipeline with V_p in place of V_phi.
Estimate lp_mixed_affine_quermassintegral(const ConvexBody& K, const ConvexBody& L, double p,
                                          const GrassmannSample& sample);
Estimate lp_mixed_affine_quermassintegral(const ConvexBody& K, const ConvexBody& L, double p, int j,
                                          std::size_t samples, std::uint64_t seed);

/// Difference quotients of Phi_{n-j} along K +phi eps.L on one shared sample,
/// against Phi_{n-j}(K)^{n+1} Phi_{phi,n-j}(K, L)^{-n} on the same sample.
struct QuermassVariation {
    VariationEstimate variation; ///< variation.value = extrapolated * phi'(1-) / j
    double value_stderr = 0.0;
    Estimate target;             ///< Phi^{n+1} Phi_phi^{-n}
    std::size_t samples = 0;
};

QuermassVariation first_variation_quermass(const ConvexBody& K, const ConvexBody& L,
                                           const OrliczFunction& phi, const std::vector<double>& eps,
                                           const GrassmannSample& sample, int dirs = 0);
QuermassVariation first_variation_quermass(const ConvexBody& K, const ConvexBody& L,
                                           const OrliczFunction& phi, int j, const std::vector<double>& eps,
                                           std::size_t samples, std::uint64_t seed);

} // namespace quermass
