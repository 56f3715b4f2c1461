#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <vector>

#include "gdisc/divergence_engine.hpp"
#include "gdisc/linalg.hpp"

namespace gdisc {

/// Truncated single-mode operator in the Fock basis |0>, ..., |cutoff-1>.
struct FockOperator {
    int cutoff = 0;
    ComplexMatrix matrix;
    double trace_deficit = 0.0;  // 1 - tr for states
};

struct FockOptions {
    int padding = 20;                  // extra levels used while exponentiating
    double max_trace_deficit = 1e-8;   // TruncationError above this; +inf disables
};

/// Ladder operator a with a|n> = sqrt(n)|n-1>.
ComplexMatrix annihilation(int cutoff);

/// exp(G) for anti-Hermitian G, through the Hermitian matrix -iG.
ComplexMatrix expm_antihermitian(const ComplexMatrix& g);

/// Squeezed thermal state with covariance a diag(mu, 1/mu).
FockOperator squeezed_thermal_fock(double a, double mu, int cutoff, const FockOptions& opts = {});

/// Density matrix of a single-mode Gaussian state: D(beta) U(phi) S(r) rho_th(a)
/// conjugated, with beta = (r_q + i r_p)/sqrt(2), U = exp(i phi n) rotating the
/// major axis to angle phi, S = exp(r/2 (a^dag^2 - a^2)).
FockOperator gaussian_state_fock(const GaussianState& state, int cutoff,
                                 const FockOptions& opts = {});

/// Pure Gaussian vector with covariance cov (2x2, pure) and mean, truncated
/// to `cutoff` levels (not renormalized).
ComplexVector pure_gaussian_vector(const Matrix& cov, const Vector& mean, int cutoff,
                                   int padding = 20);

struct LikelihoodSpectrum {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    ComplexVector top;      // eigenvector of sigma^{-1/2} rho sigma^{-1/2}
    int excluded = 0;       // sigma eigenvalues below the floor
};

/// Two largest eigenvalues of sigma^{-1/2} rho sigma^{-1/2}. Eigenvalues of
/// sigma below `floor` are dropped from the similarity transform.
LikelihoodSpectrum likelihood_top_eig(const FockOperator& rho, const FockOperator& sigma,
                                      double floor = 1e-13);

/// <psi|rho|psi> / <psi|sigma|psi> for the pure Gaussian seed vector.
double projector_ratio(const FockOperator& rho, const FockOperator& sigma, const Matrix& seed_cov,
                       const Vector& seed_mean, int padding = 20);

struct OverlapCheck {
    double lambda1 = 0.0, lambda2 = 0.0;
    double epsilon = 0.0;  // lambda1 - ratio
    double overlap = 0.0;  // |<phi|top>|^2, phi = sigma^{1/2} psi / sqrt(<psi|sigma|psi>)
    double bound = 0.0;    // 1 - epsilon / (lambda1 - lambda2)
    bool skipped = false;  // spectral gap below 1e-8
    bool passed = false;
};

/// Near-optimal seed must give a vector close to the top eigenvector.
OverlapCheck overlap_check(const FockOperator& rho, const FockOperator& sigma,
                           const Matrix& seed_cov, const Vector& seed_mean,
                           double slack = 1e-6, int padding = 20);

struct ConvergenceRow {
    int cutoff = 0;
    double trace_deficit = 0.0;
    double value = 0.0;
    double delta = std::numeric_limits<double>::quiet_NaN();  // value - previous value
};

/// Evaluates `quantity(build(cutoff))` at increasing cutoffs.
std::vector<ConvergenceRow> convergence_check(
    const std::function<FockOperator(int)>& build,
    const std::function<double(const FockOperator&)>& quantity, const std::vector<int>& cutoffs);

/// CSV with header cutoff,trace_deficit,value,delta.
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

}  // namespace gdisc
