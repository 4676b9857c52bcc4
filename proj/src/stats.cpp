#include "quermass/stats.hpp"

#include <cmath>

#include "quermass/types.hpp"

namespace quermass {

MeanVector sample_means(const std::vector<const std::vector<double>*>& columns)
{
    require(!columns.empty(), "sample_means: no columns");
    const std::size_t n = columns.front()->size();
    const auto k = static_cast<Eigen::Index>(columns.size());
    for (const auto* c : columns) require(c->size() == n && n > 0, "sample_means: ragged or empty columns");

    MeanVector m;
    m.samples = n;
    m.mean = Eigen::VectorXd::Zero(k);
    for (Eigen::Index a = 0; a < k; ++a) {
        double s = 0.0;
        for (double x : *columns[a]) s += x;
        m.mean(a) = s / n;
    }
    m.cov = Eigen::MatrixXd::Zero(k, k);
    if (n < 2) return m;
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = a; b < k; ++b) {
            const auto& x = *columns[a];
            const auto& y = *columns[b];
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += (x[i] - m.mean(a)) * (y[i] - m.mean(b));
            m.cov(a, b) = m.cov(b, a) = s / (n - 1) / n;
        }
    return m;
}

Propagated propagate(const MeanVector& m, const std::function<double(const Eigen::VectorXd&)>& f)
{
    Propagated out;
    out.value = f(m.mean);
    const auto k = m.mean.size();
    Eigen::VectorXd g(k);
    for (Eigen::Index a = 0; a < k; ++a) {
        const double step = 1e-6 * std::max(std::abs(m.mean(a)), 1e-300);
        Eigen::VectorXd hi = m.mean, lo = m.mean;
        hi(a) += step;
        lo(a) -= step;
        g(a) = (f(hi) - f(lo)) / (2.0 * step);
    }
    out.std_error = std::sqrt(std::max(0.0, g.dot(m.cov * g)));
    return out;
}

} // namespace quermass
