#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

// Asymptotic Kolmogorov tail probability with Stephens' small-sample correction.
inline double kolmogorov_pvalue(double d, double n_eff)
{
    const double s = std::sqrt(n_eff);
    const double lambda = (s + 0.12 + 0.11 / s) * d;
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) sum += (k % 2 ? 2.0 : -2.0) * std::exp(-2.0 * k * k * lambda * lambda);
    return std::clamp(sum, 0.0, 1.0);
}

inline double ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf)
{
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return kolmogorov_pvalue(d, n);
}

inline double ks_two_sample(std::vector<double> a, std::vector<double> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, k = 0;
    double d = 0.0;
    while (i < a.size() && k < b.size()) {
        const double x = std::min(a[i], b[k]);
        while (i < a.size() && a[i] <= x) ++i;
        while (k < b.size() && b[k] <= x) ++k;
        d = std::max(d, std::abs(double(i) / a.size() - double(k) / b.size()));
    }
    const double na = a.size(), nb = b.size();
    return kolmogorov_pvalue(d, na * nb / (na + nb));
}
