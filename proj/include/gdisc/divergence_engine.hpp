#pragma once

#include <optional>

#include "gdisc/divergence.hpp"
#include "gdisc/linalg.hpp"
#include "gdisc/symplectic_core.hpp"

namespace gdisc {

/// Gaussian state described by its first moments r = tr[rho x] and its
/// covariance matrix. Construction enforces the bona fide condition.
class GaussianState {
public:
    GaussianState(const Vector& mean, const Matrix& cov,
                  const Tolerances& tol = default_tolerances());

    /// Zero-mean state.
    explicit GaussianState(const Matrix& cov, const Tolerances& tol = default_tolerances());

    int modes() const { return cov_.modes(); }
    const Vector& mean() const { return mean_; }
    const PhaseSpaceMatrix& cov() const { return cov_; }

private:
    Vector mean_;
    PhaseSpaceMatrix cov_;
};

/// Covariances derived from the likelihood operator M = sigma^{-1/2} rho sigma^{-1/2}.
struct LikelihoodSpec {
    PhaseSpaceMatrix v_m;      // covariance of M
    PhaseSpaceMatrix v_zeta;   // pure covariance of the top eigenvector of M
    PhaseSpaceMatrix v_prime;  // V' entering the arcoth closed form
};

struct ClassicalGaussian {
    Vector mean;
    Matrix cov;
};

/// Throws DomainError unless V_sigma - V_rho has min eigenvalue > tol.domain.
/// Returns that eigenvalue.
double require_ordered(const Matrix& v_rho, const Matrix& v_sigma,
                       const Tolerances& tol = default_tolerances());

/// V_M = -V_s - G(V_s Omega) V_s (V_r - V_s)^{-1} V_s G(Omega V_s).
PhaseSpaceMatrix likelihood_cov(const Matrix& v_rho, const Matrix& v_sigma,
                                Warnings* warn = nullptr,
                                const Tolerances& tol = default_tolerances());

/// V_zeta = V_M # (Omega V_M^{-1} Omega^T).
PhaseSpaceMatrix top_eigvec_cov(const Matrix& v_m, const Tolerances& tol = default_tolerances());

/// V' = V_r + G(V_r Omega) V_r (V_s - V_r)^{-1} V_r G(Omega V_r).
PhaseSpaceMatrix v_prime(const Matrix& v_rho, const Matrix& v_sigma, Warnings* warn = nullptr,
                         const Tolerances& tol = default_tolerances());

LikelihoodSpec likelihood_spec(const Matrix& v_rho, const Matrix& v_sigma,
                               Warnings* warn = nullptr,
                               const Tolerances& tol = default_tolerances());

/// D_max between zero-mean states, ln of the top eigenvalue of M:
///   ln det(V_s + i Omega) - 1/2 ln det(V_s - V_r) - sum_j ln(1 + nu_j(V_M)).
/// Finite for every pair with V_sigma > V_rho, pure rho included.
double dmax_zero_mean(const Matrix& v_rho, const Matrix& v_sigma, Warnings* warn = nullptr,
                      const Tolerances& tol = default_tolerances());

/// The arcoth closed form
///   1/2 ln[det(V_s + i Omega) / det(V_r + i Omega)] - 1/2 tr arcoth(sqrt(-V' Omega V' Omega)).
/// Infinite when the arcoth argument leaves its domain (pure modes of rho,
/// where the two terms are individually divergent).
Divergence dmax_arcoth_form(const Matrix& v_rho, const Matrix& v_sigma,
                            const Tolerances& tol = default_tolerances());

/// (r_rho - r_sigma)^T (V_sigma - V_rho)^{-1} (r_rho - r_sigma).
double displacement_term(const GaussianState& rho, const GaussianState& sigma,
                         const Tolerances& tol = default_tolerances());

/// Unrestricted D_max including displacements: dmax_zero_mean + displacement_term.
Divergence dmax_unrestricted(const GaussianState& rho, const GaussianState& sigma,
                             Warnings* warn = nullptr,
                             const Tolerances& tol = default_tolerances());

/// 1/2 ln(det B / det A) + 1/2 (a - b)^T (B - A)^{-1} (a - b); infinite unless B > A.
Divergence classical_gauss_dmax(const ClassicalGaussian& p, const ClassicalGaussian& q,
                                const Tolerances& tol = default_tolerances());

/// Classical Renyi divergence of order alpha >= 1 (alpha = 1: Kullback-Leibler,
/// alpha = +inf: classical_gauss_dmax). Infinite when alpha B + (1 - alpha) A
/// is not positive definite.
Divergence classical_gauss_renyi(const ClassicalGaussian& p, const ClassicalGaussian& q,
                                 double alpha, const Tolerances& tol = default_tolerances());

/// Outcome density of a generaldyne measurement with seed gamma: mean r,
/// covariance (V + gamma)/2 (vacuum = identity convention).
ClassicalGaussian outcome_distribution(const GaussianState& state, const Matrix& gamma);

/// Classical D_max between the two outcome distributions of a seed:
///   1/2 ln[det(V_s + gamma)/det(V_r + gamma)] + displacement_term.
double measured_dmax_for_seed(const GaussianState& rho, const GaussianState& sigma,
                              const Matrix& gamma, const Tolerances& tol = default_tolerances());

/// Same objective for a raw seed that has already been validated, or that
/// is deliberately unphysical (diagnostics of gamma_opt). Zero means.
double seed_objective(const Matrix& v_rho, const Matrix& v_sigma, const Matrix& gamma);

}  // namespace gdisc
