#include "quermass/grassmannian.hpp"

#include <cmath>

#include "quermass/parallel.hpp"

namespace quermass {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double mean_of(const std::vector<double>& xs)
{
    double s = 0.0;
    for (double x : xs) s += x;
    return s / xs.size();
}

// Phi-type value (omega_n / omega_j) m^{-1/n} from a sampled mean, with
// delta-method error.
Estimate powered(const std::vector<double>& column, int n, int j, std::uint64_t seed)
{
    const MeanVector m = sample_means({&column});
    Estimate e;
    e.samples = column.size();
    e.seed = seed;
    e.raw_mean = m.mean(0);
    e.raw_stderr = std::sqrt(m.cov(0, 0));
    if (!(e.raw_mean > 0.0)) throw ComputationError("Monte Carlo mean is not positive");
    const double c = omega(n) / omega(j);
    e.value = c * std::pow(e.raw_mean, -1.0 / n);
    e.std_error = e.value / (n * e.raw_mean) * e.raw_stderr;
    return e;
}

Estimate exact(double value, double raw)
{
    Estimate e;
    e.value = value;
    e.raw_mean = raw;
    return e;
}

const Polytope& polytope_arg(const ConvexBody& K, const char* what)
{
    if (!K.is_polytope())
        throw InvalidInput(std::string(what) + ": K must be a polytope (use outer_polytope first)");
    return K.as_polytope();
}

double polytope_volume(const ConvexBody& K) { return volume(K); }

} // namespace

std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index)
{
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

Subspace sample_haar(int n, int j, std::mt19937_64& rng)
{
    require(n >= 1 && n <= kMaxDim && j >= 1 && j <= n, "sample_haar: need 1 <= j <= n <= 4");
    std::normal_distribution<double> gauss;
    for (;;) {
        Mat g(n, j);
        for (int c = 0; c < j; ++c)
            for (int r = 0; r < n; ++r) g(r, c) = gauss(rng);
        Eigen::HouseholderQR<Mat> qr(g);
        const Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
        bool ok = true;
        for (int c = 0; c < j; ++c) ok = ok && std::abs(R(c, c)) > 1e-8 * g.norm();
        if (!ok) continue;
        const Mat Q = qr.householderQ();
        return Subspace(Q.leftCols(j));
    }
}

GrassmannSample::GrassmannSample(int n, int j, std::size_t count, std::uint64_t seed)
    : n_(n), j_(j), seed_(seed)
{
    require(n >= 1 && n <= kMaxDim && j >= 1 && j <= n, "GrassmannSample: need 1 <= j <= n <= 4");
    require(count > 0, "GrassmannSample: sample count must be positive");
    std::vector<Mat> bases(count);
    parallel_for(count, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto rng = sample_stream(seed, i);
            bases[i] = sample_haar(n, j, rng).basis();
        }
    });
    xi_.reserve(count);
    for (auto& b : bases) xi_.emplace_back(std::move(b));
}

GrassmannSample GrassmannSample::full(int n)
{
    require(n >= 1 && n <= kMaxDim, "GrassmannSample::full: need 1 <= n <= 4");
    GrassmannSample s;
    s.n_ = s.j_ = n;
    s.xi_.emplace_back(Mat::Identity(n, n));
    return s;
}

std::vector<std::vector<double>> sample_columns(const GrassmannSample& sample, int width,
                                                const std::function<void(const Subspace&, double*)>& fn)
{
    const std::size_t N = sample.size();
    std::vector<double> flat(N * width);
    parallel_for(N, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) fn(sample[i], flat.data() + i * width);
    });
    std::vector<std::vector<double>> cols(width, std::vector<double>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (int k = 0; k < width; ++k) cols[k][i] = flat[i * width + k];
    return cols;
}

int default_sample_directions(int j)
{
    switch (j) {
    case 1: return 2;
    case 2: return 64;
    case 3: return 200;
    default: return 400;
    }
}

double projected_volume(const ConvexBody& K, const Subspace& xi, const DirectionSet& dirs)
{
    require(xi.ambient_dim() == K.dim(), "projected_volume: dimension mismatch");
    const int j = xi.dim();
    if (K.is_polytope()) {
        if (j == 1) {
            const Vec u = xi.basis().col(0);
            return K.h(u) + K.h(-u);
        }
        return projected_polytope(K, xi).volume();
    }
    if (K.is_ellipsoid()) {
        const Mat& B = xi.basis();
        return omega(j) * std::sqrt((B.transpose() * K.as_ellipsoid().shape() * B).determinant());
    }
    return outer_polytope(project(K, xi), dirs).volume();
}

Polytope projected_polytope(const ConvexBody& K, const Subspace& xi)
{
    const auto& P = polytope_arg(K, "projected_polytope");
    require(xi.ambient_dim() == K.dim(), "projected_polytope: dimension mismatch");
    PointList pts;
    pts.reserve(P.vertices().size());
    for (const auto& v : P.vertices()) pts.push_back(xi.coords(v));
    return Polytope::from_points(pts, xi.dim());
}

double subspace_orlicz_mixed_volume(const Polytope& P, const ConvexBody& L, const Subspace& xi,
                                    const OrliczFunction& phi)
{
    require(P.dim() == xi.dim() && L.dim() == xi.ambient_dim(), "subspace_orlicz_mixed_volume: dimension mismatch");
    return orlicz_mixed_volume_with(P, [&](const Vec& w) { return L.h(xi.ambient(w)); }, phi);
}

Polytope projected_orlicz_sum(const ConvexBody& K, const ConvexBody& L, const CombinationWeights& w,
                              const OrliczFunction& phi, const Subspace& xi, const DirectionSet& dirs)
{
    const ConvexBody Kx = project(K, xi), Lx = project(L, xi);
    return outer_polytope(orlicz_sum(Kx, Lx, w, phi), augmented_directions(dirs, {&Kx, &Lx}));
}

Estimate affine_quermassintegral(const ConvexBody& K, const GrassmannSample& sample, int dirs)
{
    const int n = sample.ambient_dim(), j = sample.dim();
    require(K.dim() == n, "affine_quermassintegral: dimension mismatch");
    const DirectionSet D = direction_set(j, dirs > 0 ? dirs : default_sample_directions(j));
    const auto cols = sample_columns(sample, 1, [&](const Subspace& xi, double* out) {
        const double v = projected_volume(K, xi, D);
        if (!(v > 0.0)) throw ComputationError("affine_quermassintegral: degenerate projection");
        out[0] = std::pow(v, -n);
    });
    return powered(cols[0], n, j, sample.seed());
}

Estimate affine_quermassintegral(const ConvexBody& K, int j, std::size_t samples, std::uint64_t seed)
{
    const int n = K.dim();
    require(j >= 0 && j <= n, "affine_quermassintegral: need 0 <= j <= n");
    if (j == 0) return exact(omega(n), 1.0);
    if (j == n) {
        const double v = K.is_oracle() ? outer_polytope(K, direction_set(n, default_volume_directions(n))).volume()
                                       : polytope_volume(K);
        Estimate e = exact(v, std::pow(v, -n));
        e.seed = seed;
        return e;
    }
    return affine_quermassintegral(K, GrassmannSample(n, j, samples, seed));
}

Estimate orlicz_mixed_affine_quermassintegral(const ConvexBody& K, const ConvexBody& L,
                                              const OrliczFunction& phi, const GrassmannSample& sample)
{
    const int n = sample.ambient_dim(), j = sample.dim();
    require(K.dim() == n && L.dim() == n, "orlicz_mixed_affine_quermassintegral: dimension mismatch");
    polytope_arg(K, "orlicz_mixed_affine_quermassintegral");
    const auto cols = sample_columns(sample, 1, [&](const Subspace& xi, double* out) {
        const Polytope Kx = projected_polytope(K, xi);
        out[0] = subspace_orlicz_mixed_volume(Kx, L, xi, phi) * std::pow(Kx.volume(), -n - 1);
    });
    return powered(cols[0], n, j, sample.seed());
}

Estimate orlicz_mixed_affine_quermassintegral(const ConvexBody& K, const ConvexBody& L,
                                              const OrliczFunction& phi, int j, std::size_t samples,
                                              std::uint64_t seed)
{
    const int n = K.dim();
    require(L.dim() == n, "orlicz_mixed_affine_quermassintegral: dimension mismatch");
    require(j >= 1 && j <= n, "orlicz_mixed_affine_quermassintegral: need 1 <= j <= n");
    if (j == n) {
        const double raw = orlicz_mixed_volume(K, L, phi) * std::pow(polytope_volume(K), -n - 1);
        Estimate e = exact(std::pow(raw, -1.0 / n), raw);
        e.seed = seed;
        return e;
    }
    return orlicz_mixed_affine_quermassintegral(K, L, phi, GrassmannSample(n, j, samples, seed));
}

Estimate lp_mixed_affine_quermassintegral(const ConvexBody& K, const ConvexBody& L, double p,
                                          const GrassmannSample& sample)
{
    const int n = sample.ambient_dim(), j = sample.dim();
    require(K.dim() == n && L.dim() == n, "lp_mixed_affine_quermassintegral: dimension mismatch");
    require(p >= 1.0, "lp_mixed_affine_quermassintegral: need p >= 1");
    polytope_arg(K, "lp_mixed_affine_quermassintegral");
    const auto cols = sample_columns(sample, 1, [&](const Subspace& xi, double* out) {
        const Polytope Kx = projected_polytope(K, xi);
        const double vp = facet_sum(Kx, [&](const Vec& w, double hK) {
            return std::pow(L.h(xi.ambient(w)), p) * std::pow(hK, 1.0 - p);
        });
        out[0] = vp * std::pow(Kx.volume(), -n - 1);
    });
    return powered(cols[0], n, j, sample.seed());
}

Estimate lp_mixed_affine_quermassintegral(const ConvexBody& K, const ConvexBody& L, double p, int j,
                                          std::size_t samples, std::uint64_t seed)
{
    const int n = K.dim();
    require(L.dim() == n, "lp_mixed_affine_quermassintegral: dimension mismatch");
    require(j >= 1 && j <= n, "lp_mixed_affine_quermassintegral: need 1 <= j <= n");
    if (j == n) {
        const double raw = lp_mixed_volume(K, L, p) * std::pow(polytope_volume(K), -n - 1);
        Estimate e = exact(std::pow(raw, -1.0 / n), raw);
        e.seed = seed;
        return e;
    }
    return lp_mixed_affine_quermassintegral(K, L, p, GrassmannSample(n, j, samples, seed));
}

QuermassVariation first_variation_quermass(const ConvexBody& K, const ConvexBody& L,
                                           const OrliczFunction& phi, const std::vector<double>& eps,
                                           const GrassmannSample& sample, int dirs)
{
    const int n = sample.ambient_dim(), j = sample.dim();
    require(K.dim() == n && L.dim() == n, "first_variation_quermass: dimension mismatch");
    polytope_arg(K, "first_variation_quermass");
    require(!eps.empty(), "first_variation_quermass: empty eps schedule");
    for (std::size_t k = 0; k < eps.size(); ++k)
        require(eps[k] > 0.0 && (k == 0 || eps[k] < eps[k - 1]),
                "first_variation_quermass: eps must be positive and strictly decreasing");

    const DirectionSet D = direction_set(j, dirs > 0 ? dirs : default_sample_directions(j));
    const int E = static_cast<int>(eps.size());
    // Columns: Vol(K|xi)^{-n}, V_phi(K|xi, L|xi) Vol(K|xi)^{-n-1}, then Vol(P_eps)^{-n} per eps.
    const auto cols = sample_columns(sample, 2 + E, [&](const Subspace& xi, double* out) {
        const ConvexBody Kx = ConvexBody::polytope(projected_polytope(K, xi));
        const ConvexBody Lx = project(L, xi);
        const DirectionSet Dx = augmented_directions(D, {&Kx, &Lx});
        const double vk = Kx.as_polytope().volume();
        out[0] = std::pow(vk, -n);
        out[1] = orlicz_mixed_volume(Kx, Lx, phi) * std::pow(vk, -n - 1);
        for (int k = 0; k < E; ++k)
            out[2 + k] = std::pow(outer_polytope(orlicz_sum(Kx, Lx, {1.0, eps[k]}, phi), Dx).volume(), -n);
    });

    const double c = omega(n) / omega(j);
    QuermassVariation out;
    out.samples = sample.size();
    auto& var = out.variation;
    var.epsilons = eps;
    const double b0 = mean_of(cols[0]);
    const double phi0 = c * std::pow(b0, -1.0 / n);
    for (int k = 0; k < E; ++k) var.quotients.push_back((c * std::pow(mean_of(cols[2 + k]), -1.0 / n) - phi0) / eps[k]);
    extrapolate(var);
    const double scale = phi.left_derivative_at_one() / j;
    var.value = var.extrapolated * scale;

    if (E >= 2) {
        const double e0 = eps[E - 2], e1 = eps[E - 1];
        const MeanVector m = sample_means({&cols[0], &cols[E], &cols[E + 1]});
        out.value_stderr = propagate(m, [&](const Eigen::VectorXd& x) {
            const double p0 = c * std::pow(x(0), -1.0 / n);
            const double q0 = (c * std::pow(x(1), -1.0 / n) - p0) / e0;
            const double q1 = (c * std::pow(x(2), -1.0 / n) - p0) / e1;
            return scale * (q1 + (q1 - q0) * e1 / (e0 - e1));
        }).std_error;
    } else {
        const MeanVector m = sample_means({&cols[0], &cols[2]});
        out.value_stderr = propagate(m, [&](const Eigen::VectorXd& x) {
            return scale * c * (std::pow(x(1), -1.0 / n) - std::pow(x(0), -1.0 / n)) / eps[0];
        }).std_error;
    }

    const MeanVector t = sample_means({&cols[1], &cols[0]});
    const Propagated target = propagate(t, [&](const Eigen::VectorXd& x) {
        return c * x(0) * std::pow(x(1), -1.0 - 1.0 / n);
    });
    out.target.value = target.value;
    out.target.std_error = target.std_error;
    out.target.samples = sample.size();
    out.target.seed = sample.seed();
    out.target.raw_mean = t.mean(0);
    out.target.raw_stderr = std::sqrt(t.cov(0, 0));
    return out;
}

QuermassVariation first_variation_quermass(const ConvexBody& K, const ConvexBody& L,
                                           const OrliczFunction& phi, int j, const std::vector<double>& eps,
                                           std::size_t samples, std::uint64_t seed)
{
    const int n = K.dim();
    require(L.dim() == n && j >= 1 && j <= n, "first_variation_quermass: need 1 <= j <= n");
    if (j == n) {
        QuermassVariation out;
        out.variation = first_variation_volume(K, L, phi, eps, direction_set(n, default_volume_directions(n)));
        out.target = exact(orlicz_mixed_volume(K, L, phi), 0.0);
        out.target.raw_mean = out.target.value;
        out.target.seed = seed;
        return out;
    }
    return first_variation_quermass(K, L, phi, eps, GrassmannSample(n, j, samples, seed));
}

} // namespace quermass
