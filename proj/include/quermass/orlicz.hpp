#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "quermass/bodies.hpp"

namespace quermass {

/// A member of the class of increasing convex functions on [0, inf) with
/// phi(0) = 0 and phi(1) = 1. Built-in families carry a closed-form left
/// derivative at 1 and inverse on [0, 1].
class OrliczFunction {
public:
    enum class Family { Power, Exp, Custom };

    /// A user-supplied function. The caller vouches for class membership;
    /// `class_report` can be used to audit it.
    static OrliczFunction custom(std::string name, std::function<double(double)> fn,
                                 double left_derivative_at_one, bool strictly_convex);

    double operator()(double t) const
    {
        switch (family_) {
        case Family::Power: return power_ == 1.0 ? t : (power_ == 2.0 ? t * t : std::pow(t, power_));
        case Family::Exp: return std::expm1(param_ * t) / denom_;
        default: return custom_(t);
        }
    }

    double left_derivative_at_one() const { return derivative_; }
    bool strictly_convex() const { return strictly_convex_; }
    const std::string& name() const { return name_; }
    Family family() const { return family_; }
    /// p for the power family, alpha for the exponential family.
    double parameter() const { return family_ == Family::Power ? power_ : param_; }

    /// Closed-form inverse on [0, 1] for built-in families.
    std::optional<double> closed_form_inverse(double y) const;
    /// Inverse on [0, 1]: closed form when available, bisection otherwise.
    double inverse(double y) const;

private:
    friend OrliczFunction make_power(double p);
    friend OrliczFunction make_normalized_exp(double alpha);
    OrliczFunction() = default;

    Family family_ = Family::Custom;
    std::string name_;
    double power_ = 1.0;
    double param_ = 0.0;
    double denom_ = 1.0;
    double derivative_ = 1.0;
    bool strictly_convex_ = false;
    std::function<double(double)> custom_;
};

/// phi(t) = t^p, p >= 1. p = 1 gives Minkowski addition, p > 1 Firey's L_p sum.
OrliczFunction make_power(double p);

/// phi(t) = (e^{alpha t} - 1) / (e^alpha - 1), alpha > 0.
OrliczFunction make_normalized_exp(double alpha);

/// Sampled audit of class membership.
struct OrliczClassReport {
    double value_at_zero = 0.0;
    double value_at_one = 0.0;
    double monotonicity_violation = 0.0; ///< max of phi(t1) - phi(t2) over t1 < t2, clipped at 0
    double convexity_violation = 0.0;    ///< max of midpoint excess, clipped at 0
    double derivative_error = 0.0;       ///< |(phi(1) - phi(1-h))/h - phi'(1-)| at h = 1e-6
    bool ok(double tol = 1e-12) const;
};

OrliczClassReport class_report(const OrliczFunction& phi, double t_max = 4.0, int grid = 400);

struct CombinationWeights {
    double a = 1.0;
    double b = 1.0;

    CombinationWeights() = default;
    CombinationWeights(double a_, double b_);
};

struct OrliczRoot {
    double lambda = 0.0;
    double residual = 0.0; ///< a phi(hK/lambda) + b phi(hL/lambda) - 1
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int evaluations = 0;
};

/// Unique lambda > 0 with a phi(hK/lambda) + b phi(hL/lambda) = 1.
OrliczRoot solve_orlicz_root(double hK, double hL, const CombinationWeights& w,
                             const OrliczFunction& phi);

inline double solve_orlicz_support(double hK, double hL, const CombinationWeights& w,
                                   const OrliczFunction& phi)
{
    return solve_orlicz_root(hK, hL, w, phi).lambda;
}

/// The Orlicz linear combination a.K +phi b.L as a support oracle.
ConvexBody orlicz_sum(const ConvexBody& K, const ConvexBody& L, const CombinationWeights& w,
                      const OrliczFunction& phi);

/// Largest support discrepancy, over `dirs` (unit vectors of the subspace
/// coordinates), between (K +phi eps.L)|xi and K|xi +phi eps.(L|xi).
double orlicz_projection_discrepancy(const ConvexBody& K, const ConvexBody& L, double eps,
                                     const OrliczFunction& phi, const Subspace& xi,
                                     const DirectionSet& dirs);

/// True iff the discrepancy above is within 1e-9.
bool check_orlicz_sum_projection(const ConvexBody& K, const ConvexBody& L, double eps,
                                 const OrliczFunction& phi, const Subspace& xi,
                                 const DirectionSet& dirs);

} // namespace quermass
