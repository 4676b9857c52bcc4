#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "quermass/bodies.hpp"
#include "quermass/grassmannian.hpp"
#include "quermass/orlicz.hpp"

namespace quermass::harness {

enum class Status { Pass, Fail, Inconclusive };
enum class CheckKind { Inequality, Identity, Probe };

std::string to_string(Status s);
std::string to_string(CheckKind k);

struct Tolerances {
    double atom = 1e-9;        ///< atom-sum identities
    double outer = 1e-3;       ///< relative, outer-polytope volumes
    double sigmas = 3.0;       ///< MC comparisons, in standard errors
    double noise_cap = 0.1;    ///< stderr above noise_cap * max(|lhs|, |rhs|) is inconclusive
    double candidate = 5.0;    ///< probe violations beyond this many stderr are flagged
    double fv_volume = 0.03;   ///< relative, first variation of volume
    double fv_quermass = 0.05; ///< relative, first variation of Phi
};

/// One verified statement. `lhs`, `rhs`, `std_error`, `abs_tol` and the
/// tolerance fields are enough to recompute `status` (see `decide`).
struct CheckResult {
    std::string check_id;
    CheckKind kind = CheckKind::Identity;
    Status status = Status::Fail;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;     ///< lhs - rhs, or the relative margin of a probe
    double std_error = 0.0;  ///< of lhs - rhs (or of the probe margin)
    double abs_tol = 0.0;
    double sigmas = 3.0;
    double noise_cap = 0.1;
    double candidate_sigmas = 5.0;
    bool candidate = false;  ///< probe violation beyond candidate_sigmas stderr
    nlohmann::json config = nlohmann::json::object();
};

/// Inequality lhs >= rhs, with band = max(abs_tol, sigmas * se).
/// Pass when lhs - rhs > sigmas * se; fail when lhs < rhs - band. In between
/// the result is inconclusive if se > noise_cap * max(|lhs|, |rhs|), else pass.
CheckResult inequality(double lhs, double rhs, double se, double abs_tol, const Tolerances& tol);
/// Identity lhs = rhs: fail when |lhs - rhs| > band, else the same noise cap decides.
CheckResult identity(double lhs, double rhs, double se, double abs_tol, const Tolerances& tol);
/// Exploratory margin >= 0: never fails. Pass when margin >= -max(abs_tol, sigmas * se),
/// else inconclusive; `candidate` when margin < -candidate_sigmas * se.
CheckResult probe(double margin, double se, double abs_tol, const Tolerances& tol);

/// The equality branch of an inequality check: same numbers, judged as an identity.
CheckResult as_identity(const CheckResult& r, const Tolerances& tol);

/// Recompute status and candidate from the stored numbers.
Status decide(const CheckResult& r);
bool is_candidate(const CheckResult& r);

nlohmann::json to_json(const CheckResult& r);
CheckResult check_result_from_json(const nlohmann::json& j);

// ---- scalar and volume level -------------------------------------------

/// Max residual |a phi(hK/l) + b phi(hL/l) - 1| over seeded random tuples
/// (log-uniform supports and weights, power and exp families) against 1e-12.
CheckResult check_solver_residuals(std::size_t tuples, std::uint64_t seed);
/// Max relative gap between the solver and the closed forms for phi = t
/// (l = a hK + b hL) and phi = t^p (l = (a hK^p + b hL^p)^{1/p}), against 1e-10.
CheckResult check_closed_forms(std::size_t tuples, std::uint64_t seed);
CheckResult check_orlicz_class(const OrliczFunction& phi);
/// Max support discrepancy between (K +phi eps.L)|xi and K|xi +phi eps.(L|xi)
/// over `pairs` random (xi in G(n, j), unit direction of xi), against 1e-9.
CheckResult check_projection_lemma(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                   double eps, int j, std::size_t pairs, std::uint64_t seed);
/// Sampled Hausdorff distance from K to K +phi eps.L along eps = 10^-1 .. 10^-6:
/// counts increases (must be 0) and reports the largest d / eps.
CheckResult check_hausdorff_continuity(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                       int dirs);
/// Max |h_{cK +phi cL} - c h_{K +phi L}| over sampled directions.
CheckResult check_sum_homogeneity(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                  double c, int dirs);
CheckResult check_surface_closure(const ConvexBody& K);
/// V_phi(K, K) = V(K); K a polytope.
CheckResult check_mixed_volume_self(const ConvexBody& K, const OrliczFunction& phi);
/// V_phi(K, lambda K) = phi(lambda) V(K).
CheckResult check_mixed_volume_dilate(const ConvexBody& K, const OrliczFunction& phi, double lambda);
/// V_p(K, L) against V_phi(K, L) with phi = t^p, relative 1e-12.
CheckResult check_lp_volume_pipeline(const ConvexBody& K, const ConvexBody& L, double p);
/// V_1(K, L)^n >= V(K)^{n-1} V(L).
CheckResult check_minkowski_volume(const ConvexBody& K, const ConvexBody& L);
/// V_p(K, L)^n >= V(K)^{n-p} V(L)^p.
CheckResult check_lp_minkowski_volume(const ConvexBody& K, const ConvexBody& L, double p);
/// V_phi(K, L) / V(K) >= phi((V(L) / V(K))^{1/n}).
CheckResult check_orlicz_minkowski_volume(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi);
/// V(K + L)^{1/n} >= V(K)^{1/n} + V(L)^{1/n}, K + L through its outer polytope.
CheckResult check_brunn_minkowski_volume(const ConvexBody& K, const ConvexBody& L, int dirs);
/// 1 >= phi((V(K) / V(K_e))^{1/n}) + eps phi((V(L) / V(K_e))^{1/n}), K_e = K +phi eps.L.
CheckResult check_orlicz_bm_volume(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                   double eps, int dirs);
/// Extrapolated volume quotient times phi'(1-)/n against V_phi(K, L)
/// (or V(K) when `L` is K and K is not a polytope), relative tol.fv_volume.
CheckResult check_first_variation_volume(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                         const std::vector<double>& eps, int dirs, const Tolerances& tol);
/// (1 - t) / (1 - phi(t^{1/j})) at t = 1 - 1e-6 against j / phi'(1-), within 1e-4.
CheckResult check_limit_ratio(const OrliczFunction& phi, int j);
/// The ratio itself, with cancellation-free denominators for the built-in families.
double limit_ratio(const OrliczFunction& phi, int j, double t);

// ---- affine quermassintegrals ------------------------------------------

/// G(n, j) sample, or the single point of G(n, n) when j = n.
GrassmannSample make_sample(int n, int j, std::size_t samples, std::uint64_t seed);

/// Phi_{n-j}(rB) = omega_n r^j.
CheckResult check_ball_law(double r, const GrassmannSample& s, const Tolerances& tol);
/// Phi_{n-j}(cK) = c^j Phi_{n-j}(K) on shared samples.
CheckResult check_homogeneity(const ConvexBody& K, double c, const GrassmannSample& s, const Tolerances& tol);
/// On a sample of G(n, n) (random rotations): Phi_0(K) = V(K).
CheckResult check_full_dim_volume(const ConvexBody& K, const GrassmannSample& s, const Tolerances& tol);
/// On a sample of G(n, n): Phi_{phi,0}(K, L)^{-n} = V_phi(K, L) V(K)^{-n-1}.
CheckResult check_degeneration(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                               const GrassmannSample& s, const Tolerances& tol);
/// Phi_{phi}(K, lambda K) phi(lambda)^{1/n} = Phi(K) on shared samples.
CheckResult check_lambda_scaling(const ConvexBody& K, const OrliczFunction& phi, double lambda,
                                 const GrassmannSample& s, const Tolerances& tol);
/// Phi_phi(K, K) = Phi(K).
CheckResult check_equal_bodies(const ConvexBody& K, const OrliczFunction& phi, const GrassmannSample& s,
                               const Tolerances& tol);
/// L_p pipeline against the Orlicz pipeline with phi = t^p on the same sample.
CheckResult check_lp_pipeline(const ConvexBody& K, const ConvexBody& L, double p, const GrassmannSample& s,
                              const Tolerances& tol);
/// Phi(TK) = Phi(K) for T in SL(n), on two independent samples.
CheckResult check_sl_invariance(const ConvexBody& K, const LinearMap& T, int j, std::size_t samples,
                                std::uint64_t seed_a, std::uint64_t seed_b, const Tolerances& tol);
/// Phi_phi(TK, TL) = Phi_phi(K, L) for T in SL(n), on two independent samples.
CheckResult check_sl_invariance_orlicz(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                       const LinearMap& T, int j, std::size_t samples, std::uint64_t seed_a,
                                       std::uint64_t seed_b, const Tolerances& tol);
/// Seeded T in SL(n) with condition number at most `max_condition`.
LinearMap random_special_linear(int n, std::uint64_t seed, double max_condition = 8.0);

/// (Phi_phi(K, L) / Phi(K))^{-n} >= phi((Phi(L) / Phi(K))^{1/j}) on shared samples.
CheckResult check_orlicz_minkowski_quermass(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                            const GrassmannSample& s, const Tolerances& tol);
CheckResult check_orlicz_minkowski_quermass(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                            int j, std::size_t samples, std::uint64_t seed);
/// The same check for every (L, phi) in Ls x phis (L-major), projecting K once
/// per sample. Each result equals the single-pair check on `s`.
std::vector<CheckResult> check_orlicz_minkowski_quermass(const ConvexBody& K,
                                                         const std::vector<const ConvexBody*>& Ls,
                                                         const std::vector<OrliczFunction>& phis,
                                                         const GrassmannSample& s, const Tolerances& tol);

/// Both statements around K_e = K +phi eps.L, from one pass over the sample
/// with per-sample outer polytopes P of K|xi +phi eps.(L|xi):
///   first:  (Phi_phi(P, K) / Phi(P))^{-n} + eps (Phi_phi(P, L) / Phi(P))^{-n} = 1
///   second: 1 >= phi((Phi(K) / Phi(P))^{1/j}) + eps phi((Phi(L) / Phi(P))^{1/j})
/// `dirs` is the per-sample direction count (0: default for the sample).
std::pair<CheckResult, CheckResult> check_decomposition_and_bm(const ConvexBody& K, const ConvexBody& L,
                                                               const OrliczFunction& phi, double eps,
                                                               const GrassmannSample& s, int dirs,
                                                               const Tolerances& tol);
CheckResult check_decomposition_identity(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                         double eps, int j, std::size_t samples, std::uint64_t seed);
CheckResult check_orlicz_bm_quermass(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                     double eps, int j, std::size_t samples, std::uint64_t seed);

/// Extrapolated difference quotient of Phi against Phi^{n+1} Phi_phi^{-n},
/// relative tol.fv_quermass.
CheckResult check_first_variation_quermass(const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi,
                                           const std::vector<double>& eps, const GrassmannSample& s, int dirs,
                                           const Tolerances& tol);

/// Probe of Phi_{n-j}(K)^n >= omega_n^{n-j} V(K)^j; margin is the relative excess.
CheckResult check_lutwak_conjecture(const ConvexBody& K, const GrassmannSample& s, const Tolerances& tol);
CheckResult check_lutwak_conjecture(const ConvexBody& K, int j, std::size_t samples, std::uint64_t seed);

} // namespace quermass::harness
