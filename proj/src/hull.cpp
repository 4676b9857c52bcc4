#include "quermass/hull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

namespace quermass {

namespace {

constexpr double kJoggle = 1e-10;     // relative perturbation for predicates
constexpr double kVisibleEps = 1e-13; // relative visibility threshold
constexpr double kCoplanarTol = 1e-10;

double factorial(int k)
{
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

double point_scale(const PointList& pts, const Vec& center)
{
    double s = 0.0;
    for (const auto& p : pts) s = std::max(s, (p - center).cwiseAbs().maxCoeff());
    return s > 0.0 ? s : 1.0;
}

Vec centroid(const PointList& pts, int dim)
{
    Vec c = Vec::Zero(dim);
    for (const auto& p : pts) c += p;
    return c / static_cast<double>(pts.size());
}

Hull hull_1d(const PointList& pts)
{
    int lo = 0, hi = 0;
    for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
        if (pts[i](0) < pts[lo](0)) lo = i;
        if (pts[i](0) > pts[hi](0)) hi = i;
    }
    const double len = pts[hi](0) - pts[lo](0);
    const Vec c = centroid(pts, 1);
    if (len <= 1e-14 * point_scale(pts, c))
        throw ComputationError("convex_hull: degenerate 1-dimensional point set");
    Hull h;
    h.dim = 1;
    h.vertices = {std::min(lo, hi), std::max(lo, hi)};
    h.facets.push_back({make_vec({1.0}), pts[hi](0), 1.0, {hi}});
    h.facets.push_back({make_vec({-1.0}), -pts[lo](0), 1.0, {lo}});
    h.volume = len;
    h.interior = make_vec({0.5 * (pts[hi](0) + pts[lo](0))});
    return h;
}

double cross2(const Vec& o, const Vec& a, const Vec& b)
{
    return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

Hull hull_2d(const PointList& pts)
{
    const int m = static_cast<int>(pts.size());
    const double scale = point_scale(pts, centroid(pts, 2));
    const double tol = 1e-14 * scale * scale;

    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (pts[a](0) != pts[b](0)) return pts[a](0) < pts[b](0);
        return pts[a](1) < pts[b](1);
    });

    std::vector<int> chain(2 * m);
    int k = 0;
    for (int i = 0; i < m; ++i) {
        while (k >= 2 && cross2(pts[chain[k - 2]], pts[chain[k - 1]], pts[idx[i]]) <= tol) --k;
        chain[k++] = idx[i];
    }
    for (int i = m - 2, lower = k + 1; i >= 0; --i) {
        while (k >= lower && cross2(pts[chain[k - 2]], pts[chain[k - 1]], pts[idx[i]]) <= tol) --k;
        chain[k++] = idx[i];
    }
    chain.resize(std::max(k - 1, 0));
    if (chain.size() < 3)
        throw ComputationError("convex_hull: degenerate 2-dimensional point set");

    Hull h;
    h.dim = 2;
    h.interior = Vec::Zero(2);
    for (int v : chain) h.interior += pts[v];
    h.interior /= static_cast<double>(chain.size());

    const int nv = static_cast<int>(chain.size());
    double vol = 0.0;
    for (int i = 0; i < nv; ++i) {
        const int a = chain[i], b = chain[(i + 1) % nv];
        const Vec e = pts[b] - pts[a];
        const double len = e.norm();
        Vec n(2);
        n << e(1) / len, -e(0) / len;
        const double off = n.dot(pts[a]);
        h.facets.push_back({n, off, len, {a, b}});
        vol += len * (off - n.dot(h.interior)) / 2.0;
    }
    h.volume = vol;
    h.vertices = chain;
    std::sort(h.vertices.begin(), h.vertices.end());
    return h;
}

// Cofactor normal of the hyperplane through points v[0..d-1], unnormalized,
// with |n| = (d-1)! times the simplex area.
template <class T>
Vec cofactor_normal(const PointList& pts, const std::array<int, kMaxDim>& v, int d)
{
    T rows[kMaxDim - 1][kMaxDim];
    for (int r = 1; r < d; ++r)
        for (int c = 0; c < d; ++c)
            rows[r - 1][c] = static_cast<T>(pts[v[r]](c)) - static_cast<T>(pts[v[0]](c));
    Vec n(d);
    for (int i = 0; i < d; ++i) {
        int cols[kMaxDim - 1];
        for (int c = 0, k = 0; c < d; ++c)
            if (c != i) cols[k++] = c;
        T det;
        if (d == 2) {
            det = rows[0][cols[0]];
        } else if (d == 3) {
            det = rows[0][cols[0]] * rows[1][cols[1]] - rows[0][cols[1]] * rows[1][cols[0]];
        } else {
            auto m = [&](int r, int c) { return rows[r][cols[c]]; };
            det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                  m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                  m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        }
        n(i) = static_cast<double>(((d + i + 1) % 2 == 0) ? det : -det);
    }
    return n;
}

// Near-flat simplices (the joggle makes many) lose most digits of their
// direction to cancellation in double; redo those in quad precision.
Vec simplex_normal(const PointList& pts, const std::array<int, kMaxDim>& v, int d, double scale)
{
    Vec n = cofactor_normal<double>(pts, v, d);
    if (n.norm() > 1e-3 * std::pow(scale, d - 1)) return n;
    return cofactor_normal<__float128>(pts, v, d);
}

// Quickhull over simplicial facets for d = 3, 4.
struct QFacet {
    std::array<int, kMaxDim> v{};
    std::array<int, kMaxDim> nb{};
    Vec normal;
    double offset = 0.0;
    std::vector<int> outside;
    int furthest = -1;
    double furthest_dist = 0.0;
    bool alive = true;
    int stamp = -1;
};

class QuickHull {
public:
    QuickHull(const PointList& original, int dim) : p_(original), d_(dim)
    {
        const Vec c = centroid(p_, d_);
        scale_ = point_scale(p_, c);
        eps_ = kVisibleEps * scale_;

        std::mt19937_64 rng(0x5eedf00dULL);
        std::uniform_real_distribution<double> jig(-1.0, 1.0);
        q_.reserve(p_.size());
        for (const auto& x : p_) {
            Vec y = x - c;
            for (int i = 0; i < d_; ++i) y(i) += kJoggle * scale_ * jig(rng);
            q_.push_back(y);
        }
        offset_ = c;
    }

    std::vector<QFacet> run()
    {
        const auto simplex = initial_simplex();
        interior_q_ = Vec::Zero(d_);
        for (int s : simplex) interior_q_ += q_[s];
        interior_q_ /= static_cast<double>(d_ + 1);

        for (int k = 0; k <= d_; ++k) {
            QFacet f;
            int slot = 0;
            for (int t = 0; t <= d_; ++t) {
                if (t == k) continue;
                f.v[slot] = simplex[t];
                f.nb[slot] = t; // facet omitting simplex[t]
                ++slot;
            }
            set_plane(f);
            facets_.push_back(std::move(f));
        }

        std::vector<char> in_simplex(q_.size(), 0);
        for (int s : simplex) in_simplex[s] = 1;
        std::vector<int> all;
        for (int i = 0; i < static_cast<int>(q_.size()); ++i)
            if (!in_simplex[i]) all.push_back(i);
        std::vector<int> firsts(d_ + 1);
        std::iota(firsts.begin(), firsts.end(), 0);
        assign(all, firsts, -1);

        facets_.reserve(8 * q_.size() + 16);
        std::vector<int> work(firsts.rbegin(), firsts.rend());
        int stamp = 0;
        while (!work.empty()) {
            const int fi = work.back();
            work.pop_back();
            if (!facets_[fi].alive || facets_[fi].outside.empty()) continue;
            const int apex = facets_[fi].furthest;
            ++stamp;

            std::vector<int>& visible = visible_;
            visible.assign(1, fi);
            facets_[fi].stamp = stamp;
            for (std::size_t h = 0; h < visible.size(); ++h) {
                const QFacet& f = facets_[visible[h]];
                for (int m = 0; m < d_; ++m) {
                    QFacet& g = facets_[f.nb[m]];
                    if (g.stamp == stamp) continue;
                    if (distance(g, apex) > eps_) {
                        g.stamp = stamp;
                        visible.push_back(f.nb[m]);
                    }
                }
            }

            std::vector<int>& created = created_;
            created.clear();
            for (int vi : visible) {
                for (int m = 0; m < d_; ++m) {
                    const int gi = facets_[vi].nb[m];
                    if (facets_[gi].stamp == stamp) continue;
                    QFacet nf;
                    nf.v = facets_[vi].v;
                    nf.v[m] = apex;
                    nf.nb.fill(-1);
                    nf.nb[m] = gi;
                    set_plane(nf);
                    const int ni = static_cast<int>(facets_.size());
                    for (int s = 0; s < d_; ++s)
                        if (facets_[gi].nb[s] == vi) facets_[gi].nb[s] = ni;
                    facets_.push_back(std::move(nf));
                    created.push_back(ni);
                }
            }

            // Link the new facets to each other across ridges containing the
            // apex: each such ridge appears exactly twice among the new facets.
            ridges_.clear();
            for (int ni : created) {
                for (int m = 0; m < d_; ++m) {
                    if (facets_[ni].v[m] == apex) continue;
                    Ridge r;
                    r.key.fill(-1);
                    int s = 0;
                    for (int t = 0; t < d_; ++t)
                        if (t != m) r.key[s++] = facets_[ni].v[t];
                    std::sort(r.key.begin(), r.key.begin() + (d_ - 1));
                    r.facet = ni;
                    r.slot = m;
                    ridges_.push_back(r);
                }
            }
            std::sort(ridges_.begin(), ridges_.end(),
                      [](const Ridge& a, const Ridge& b) { return a.key < b.key; });
            for (std::size_t r = 0; r < ridges_.size(); r += 2) {
                if (r + 1 == ridges_.size() || ridges_[r].key != ridges_[r + 1].key)
                    throw ComputationError("convex_hull: inconsistent horizon");
                facets_[ridges_[r].facet].nb[ridges_[r].slot] = ridges_[r + 1].facet;
                facets_[ridges_[r + 1].facet].nb[ridges_[r + 1].slot] = ridges_[r].facet;
            }

            std::vector<int>& orphans = orphans_;
            orphans.clear();
            for (int vi : visible) {
                for (int pt : facets_[vi].outside)
                    if (pt != apex) orphans.push_back(pt);
                facets_[vi].outside.clear();
                facets_[vi].alive = false;
            }
            assign(orphans, created, apex);
            for (int ni : created)
                if (!facets_[ni].outside.empty()) work.push_back(ni);
        }

        std::vector<QFacet> out;
        for (auto& f : facets_)
            if (f.alive) out.push_back(std::move(f));
        // Remap neighbor indices into `out`.
        std::vector<int> remap(facets_.size(), -1);
        int k = 0;
        for (std::size_t i = 0; i < facets_.size(); ++i)
            if (facets_[i].alive) remap[i] = k++;
        for (auto& f : out)
            for (int m = 0; m < d_; ++m) f.nb[m] = remap[f.nb[m]];
        return out;
    }

    double scale() const { return scale_; }

private:
    std::vector<int> initial_simplex() const
    {
        const int m = static_cast<int>(q_.size());
        if (m < d_ + 1) throw ComputationError("convex_hull: too few points");
        std::vector<int> chosen;
        int lo = 0, hi = 0;
        for (int i = 1; i < m; ++i) {
            if (q_[i](0) < q_[lo](0)) lo = i;
            if (q_[i](0) > q_[hi](0)) hi = i;
        }
        if (lo == hi) throw ComputationError("convex_hull: degenerate point set");
        chosen = {lo, hi};
        std::vector<Vec> basis;
        Vec e = q_[hi] - q_[lo];
        basis.push_back(e / e.norm());
        while (static_cast<int>(chosen.size()) < d_ + 1) {
            int best = -1;
            double best_d = 0.0;
            for (int i = 0; i < m; ++i) {
                Vec r = q_[i] - q_[lo];
                for (const auto& b : basis) r -= r.dot(b) * b;
                const double dist = r.norm();
                if (dist > best_d) {
                    best_d = dist;
                    best = i;
                }
            }
            if (best < 0 || best_d <= 1e-9 * scale_)
                throw ComputationError("convex_hull: point set is not full dimensional");
            Vec r = q_[best] - q_[lo];
            for (const auto& b : basis) r -= r.dot(b) * b;
            basis.push_back(r / r.norm());
            chosen.push_back(best);
        }
        return chosen;
    }

    void set_plane(QFacet& f) const
    {
        Vec n = simplex_normal(q_, f.v, d_, scale_);
        const double len = n.norm();
        if (len > 0.0) n /= len;
        double off = n.dot(q_[f.v[0]]);
        if (n.dot(interior_q_) > off) {
            n = -n;
            off = -off;
        }
        f.normal = n;
        f.offset = off;
    }

    double distance(const QFacet& f, int pt) const { return f.normal.dot(q_[pt]) - f.offset; }

    void assign(const std::vector<int>& pts, const std::vector<int>& targets, int /*apex*/)
    {
        for (int pt : pts) {
            for (int fi : targets) {
                QFacet& f = facets_[fi];
                const double dist = distance(f, pt);
                if (dist > eps_) {
                    f.outside.push_back(pt);
                    if (f.furthest < 0 || dist > f.furthest_dist) {
                        f.furthest = pt;
                        f.furthest_dist = dist;
                    }
                    break;
                }
            }
        }
    }

    struct Ridge {
        std::array<int, kMaxDim> key;
        int facet;
        int slot;
    };

    const PointList& p_;
    int d_;
    std::vector<Ridge> ridges_;
    std::vector<int> visible_, created_, orphans_;
    PointList q_;
    Vec offset_;
    Vec interior_q_;
    double scale_ = 1.0;
    double eps_ = 0.0;
    std::vector<QFacet> facets_;

public:
    Vec interior_original() const { return interior_q_ + offset_; }
};

Hull hull_nd(const PointList& pts, int d)
{
    QuickHull qh(pts, d);
    auto simplices = qh.run();
    const double scale = qh.scale();
    const Vec interior = qh.interior_original();
    const double simplex_norm = factorial(d - 1);
    const int ns = static_cast<int>(simplices.size());
    const double flat_tol = 1e-12 * std::pow(scale, d - 1);

    std::vector<Vec> normals(ns);
    std::vector<double> offsets(ns), areas(ns);
    for (int s = 0; s < ns; ++s) {
        const auto& f = simplices[s];
        Vec n = simplex_normal(pts, f.v, d, scale);
        const double len = n.norm();
        areas[s] = len / simplex_norm;
        // Simplices that are flat in the original coordinates (folds along a
        // ridge) keep the joggled normal.
        if (len > flat_tol) {
            n /= len;
            if (n.dot(pts[f.v[0]] - interior) < 0.0) n = -n;
        } else {
            n = f.normal;
        }
        normals[s] = n;
        offsets[s] = n.dot(pts[f.v[0]]);
    }

    Hull h;
    h.dim = d;
    h.interior = interior;

    std::vector<int> order(ns);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return areas[a] != areas[b] ? areas[a] > areas[b] : a < b;
    });
    std::vector<int> group(ns, -1);
    const double tol = kCoplanarTol * scale;
    double vol = 0.0;
    std::vector<HullFacet> groups;
    std::vector<std::vector<int>> members;
    for (int seed : order) {
        if (group[seed] >= 0) continue;
        const int gid = static_cast<int>(groups.size());
        HullFacet facet{normals[seed], offsets[seed], 0.0, {}};
        std::vector<int> queue{seed};
        group[seed] = gid;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const int s = queue[q];
            facet.area += areas[s];
            vol += areas[s] * (offsets[s] - normals[s].dot(interior)) / d;
            for (int m = 0; m < d; ++m) {
                const int t = simplices[s].nb[m];
                if (t < 0 || group[t] >= 0) continue;
                bool coplanar = true;
                for (int r = 0; r < d && coplanar; ++r)
                    coplanar = std::abs(facet.normal.dot(pts[simplices[t].v[r]]) - facet.offset) <= tol;
                if (coplanar) {
                    group[t] = gid;
                    queue.push_back(t);
                }
            }
        }
        groups.push_back(std::move(facet));
        members.push_back(std::move(queue));
    }

    // Joggling can leave a sliver simplex folded across the ridge of two
    // coplanar groups. Its plane fails local convexity against neighbouring
    // vertices: drop it, and collect each facet's vertices from its own and
    // adjacent simplices so that the sliver's vertices are kept.
    const double fold_tol = 1e3 * tol;
    bool folded = false;
    std::vector<int> seen(pts.size(), -1), near;
    h.facets.reserve(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        HullFacet& facet = groups[g];
        near.clear();
        auto add = [&](int i) {
            if (seen[i] == static_cast<int>(g)) return;
            seen[i] = static_cast<int>(g);
            near.push_back(i);
        };
        for (int s : members[g]) {
            for (int m = 0; m < d; ++m) {
                add(simplices[s].v[m]);
                const int t = simplices[s].nb[m];
                if (t >= 0 && group[t] != static_cast<int>(g))
                    for (int r = 0; r < d; ++r) add(simplices[t].v[r]);
            }
        }
        std::sort(near.begin(), near.end());
        bool supporting = true;
        for (int i : near) {
            const double dist = facet.normal.dot(pts[i]) - facet.offset;
            if (dist > fold_tol) {
                supporting = false;
                break;
            }
            if (std::abs(dist) <= tol) facet.vertices.push_back(i);
        }
        if (supporting && static_cast<int>(facet.vertices.size()) >= d)
            h.facets.push_back(std::move(facet));
        else
            folded = true;
    }

    // Areas of the surviving facets no longer add up; take them from the vertex sets.
    if (folded) {
        vol = 0.0;
        for (auto& f : h.facets) {
            Mat basis = Eigen::HouseholderQR<Mat>(Mat(f.normal)).householderQ();
            PointList proj;
            for (int i : f.vertices) proj.push_back(basis.rightCols(d - 1).transpose() * pts[i]);
            f.area = hull_volume_or_zero(proj, d - 1);
            vol += f.area * (f.offset - f.normal.dot(interior)) / d;
        }
    }
    h.volume = vol;

    for (const auto& f : h.facets) h.vertices.insert(h.vertices.end(), f.vertices.begin(), f.vertices.end());
    std::sort(h.vertices.begin(), h.vertices.end());
    h.vertices.erase(std::unique(h.vertices.begin(), h.vertices.end()), h.vertices.end());
    return h;
}

} // namespace

Vec generalized_cross(const Mat& rows)
{
    const int d = static_cast<int>(rows.cols());
    Vec n(d);
    if (d == 1) {
        n(0) = 1.0;
        return n;
    }
    using Minor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim - 1, kMaxDim - 1>;
    for (int i = 0; i < d; ++i) {
        Minor minor(d - 1, d - 1);
        for (int c = 0, mc = 0; c < d; ++c) {
            if (c == i) continue;
            minor.col(mc++) = rows.col(c);
        }
        const double sign = ((d + i + 1) % 2 == 0) ? 1.0 : -1.0; // (-1)^{d+(i+1)}
        n(i) = sign * minor.determinant();
    }
    return n;
}

Hull convex_hull(const PointList& points, int dim)
{
    require(dim >= 1 && dim <= kMaxDim, "convex_hull: dimension must be in [1, 4]");
    require(!points.empty(), "convex_hull: empty point set");
    for (const auto& p : points) require(p.size() == dim, "convex_hull: point dimension mismatch");
    switch (dim) {
    case 1: return hull_1d(points);
    case 2: return hull_2d(points);
    default: return hull_nd(points, dim);
    }
}

double hull_volume_or_zero(const PointList& points, int dim)
{
    if (static_cast<int>(points.size()) < dim + 1) return 0.0;
    try {
        return convex_hull(points, dim).volume;
    } catch (const ComputationError&) {
        return 0.0;
    }
}

} // namespace quermass
