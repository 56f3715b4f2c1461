#include "gdisc/divergence_engine.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gdisc/errors.hpp"

namespace gdisc {

using linalg::symmetrize;

namespace {

// G(V Omega) V, which is symmetric (= V^{1/2} sqrt(1 + A^{-2}) V^{1/2}).
Matrix g_times_v(const Matrix& v, const Tolerances& tol) {
    return symmetrize(matrix_G(v, Side::Left, tol) * v);
}

double sum_log_nu_sq_minus_one(const std::vector<double>& nu, const char* who) {
    double s = 0.0;
    for (double x : nu) {
        if (!(x > 1.0)) {
            throw DomainError(std::string(who) + " has a symplectic eigenvalue <= 1", x);
        }
        s += std::log((x - 1.0) * (x + 1.0));
    }
    return s;
}

void require_same_modes(const Matrix& a, const Matrix& b) {
    if (modes_of(a) != modes_of(b)) throw DimensionError("mode counts differ");
}

}  // namespace

GaussianState::GaussianState(const Vector& mean, const Matrix& cov, const Tolerances& tol)
    : mean_(mean), cov_(cov, tol) {
    if (mean_.size() != cov_.mat().rows()) {
        throw DimensionError("mean has " + std::to_string(mean_.size()) + " entries, expected " +
                             std::to_string(cov_.mat().rows()));
    }
    const BonaFide bf = check_bona_fide(cov_, tol);
    if (!bf.ok) {
        throw InvalidState("covariance violates the bona fide condition (min eigenvalue of "
                           "V + i Omega is " + std::to_string(bf.min_eigenvalue) + ")");
    }
}

GaussianState::GaussianState(const Matrix& cov, const Tolerances& tol)
    : GaussianState(Vector::Zero(cov.rows()), cov, tol) {}

double require_ordered(const Matrix& v_rho, const Matrix& v_sigma, const Tolerances& tol) {
    require_same_modes(v_rho, v_sigma);
    const double lo = linalg::min_eigenvalue(v_sigma - v_rho);
    if (!(lo > tol.domain)) {
        throw DomainError("V_sigma - V_rho is not positive definite (min eigenvalue " +
                              format_real(lo) + ")",
                          lo);
    }
    return lo;
}

PhaseSpaceMatrix likelihood_cov(const Matrix& v_rho, const Matrix& v_sigma, Warnings* warn,
                                const Tolerances& tol) {
    require_ordered(v_rho, v_sigma, tol);
    const Matrix x = g_times_v(v_sigma, tol);
    const auto inv = linalg::sym_inverse(v_rho - v_sigma, "V_rho - V_sigma", warn, tol);
    return PhaseSpaceMatrix(symmetrize(-v_sigma - x * inv.inverse * x), tol);
}

PhaseSpaceMatrix top_eigvec_cov(const Matrix& v_m, const Tolerances& tol) {
    const int n = modes_of(v_m);
    linalg::require_pd(v_m, "V_M");
    const Matrix om = omega(n);
    const Matrix dual = symmetrize(om * linalg::sym_inverse(v_m, "V_M").inverse * om.transpose());
    return PhaseSpaceMatrix(geometric_mean(v_m, dual, 0.5), tol);
}

PhaseSpaceMatrix v_prime(const Matrix& v_rho, const Matrix& v_sigma, Warnings* warn,
                         const Tolerances& tol) {
    require_ordered(v_rho, v_sigma, tol);
    const Matrix x = g_times_v(v_rho, tol);
    const auto inv = linalg::sym_inverse(v_sigma - v_rho, "V_sigma - V_rho", warn, tol);
    return PhaseSpaceMatrix(symmetrize(v_rho + x * inv.inverse * x), tol);
}

LikelihoodSpec likelihood_spec(const Matrix& v_rho, const Matrix& v_sigma, Warnings* warn,
                               const Tolerances& tol) {
    PhaseSpaceMatrix vm = likelihood_cov(v_rho, v_sigma, warn, tol);
    PhaseSpaceMatrix vz = top_eigvec_cov(vm, tol);
    PhaseSpaceMatrix vp = v_prime(v_rho, v_sigma, warn, tol);
    return {std::move(vm), std::move(vz), std::move(vp)};
}

double dmax_zero_mean(const Matrix& v_rho, const Matrix& v_sigma, Warnings* warn,
                      const Tolerances& tol) {
    require_ordered(v_rho, v_sigma, tol);
    const double log_det_s = sum_log_nu_sq_minus_one(symplectic_eigenvalues(v_sigma), "V_sigma");
    const double log_det_diff = linalg::logdet_pd(v_sigma - v_rho);
    const PhaseSpaceMatrix vm = likelihood_cov(v_rho, v_sigma, warn, tol);
    double top = 0.0;
    for (double nu : symplectic_eigenvalues(vm)) top += std::log1p(nu);
    return log_det_s - 0.5 * log_det_diff - top;
}

Divergence dmax_arcoth_form(const Matrix& v_rho, const Matrix& v_sigma, const Tolerances& tol) {
    require_ordered(v_rho, v_sigma, tol);
    const std::vector<double> nu_r = symplectic_eigenvalues(v_rho);
    for (double x : nu_r) {
        if (!(x > 1.0 + tol.domain)) return Divergence::infinite();
    }
    const double log_det_s = sum_log_nu_sq_minus_one(symplectic_eigenvalues(v_sigma), "V_sigma");
    const double log_det_r = sum_log_nu_sq_minus_one(nu_r, "V_rho");

    // sqrt(-V' Omega V' Omega) is similar to sqrt(-A^2) with A = V'^{1/2} Omega V'^{1/2};
    // the trace of arcoth only depends on the spectrum.
    const PhaseSpaceMatrix vp = v_prime(v_rho, v_sigma, nullptr, tol);
    const Matrix w = linalg::sqrt_pd(vp);
    const Matrix a = w * omega(vp.modes()) * w;
    const Matrix root = linalg::sym_apply(symmetrize(-a * a),
                                          [](double x) { return std::sqrt(std::max(x, 0.0)); });
    double tr = 0.0;
    try {
        tr = arcoth_matrix(root, tol).trace();
    } catch (const DomainError&) {
        return Divergence::infinite();
    }
    return Divergence::finite(0.5 * (log_det_s - log_det_r) - 0.5 * tr);
}

double displacement_term(const GaussianState& rho, const GaussianState& sigma,
                         const Tolerances& tol) {
    require_ordered(rho.cov(), sigma.cov(), tol);
    const Vector d = rho.mean() - sigma.mean();
    if (d.isZero(0.0)) return 0.0;
    const Matrix diff = symmetrize(sigma.cov().mat() - rho.cov().mat());
    return d.dot(diff.llt().solve(d));
}

Divergence dmax_unrestricted(const GaussianState& rho, const GaussianState& sigma, Warnings* warn,
                             const Tolerances& tol) {
    const double base = dmax_zero_mean(rho.cov(), sigma.cov(), warn, tol);
    return Divergence::finite(base + displacement_term(rho, sigma, tol));
}

namespace {

void check_classical(const ClassicalGaussian& p, const ClassicalGaussian& q) {
    const auto d = p.mean.size();
    if (p.cov.rows() != d || p.cov.cols() != d || q.mean.size() != d || q.cov.rows() != d ||
        q.cov.cols() != d) {
        throw DimensionError("classical Gaussians have inconsistent dimensions");
    }
    linalg::require_pd(p.cov, "P covariance");
    linalg::require_pd(q.cov, "Q covariance");
}

}  // namespace

Divergence classical_gauss_dmax(const ClassicalGaussian& p, const ClassicalGaussian& q,
                                const Tolerances& tol) {
    check_classical(p, q);
    const Matrix diff = symmetrize(q.cov - p.cov);
    const double scale = std::max(1.0, linalg::spectral_norm(q.cov));
    if (!(linalg::min_eigenvalue(diff) > tol.domain * scale)) return Divergence::infinite();
    const Vector d = p.mean - q.mean;
    const double quad = d.isZero(0.0) ? 0.0 : d.dot(diff.llt().solve(d));
    return Divergence::finite(0.5 * (linalg::logdet_pd(q.cov) - linalg::logdet_pd(p.cov)) +
                              0.5 * quad);
}

Divergence classical_gauss_renyi(const ClassicalGaussian& p, const ClassicalGaussian& q,
                                 double alpha, const Tolerances& tol) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("Renyi order must be >= 1");
    if (std::isinf(alpha)) return classical_gauss_dmax(p, q, tol);
    check_classical(p, q);
    const Vector d = p.mean - q.mean;
    const double ld_p = linalg::logdet_pd(p.cov);
    const double ld_q = linalg::logdet_pd(q.cov);

    if (alpha == 1.0) {
        const auto llt = q.cov.llt();
        const double tr = llt.solve(p.cov).trace();
        const double quad = d.dot(llt.solve(d));
        return Divergence::finite(
            0.5 * (ld_q - ld_p + tr - static_cast<double>(d.size()) + quad));
    }

    const Matrix mix = symmetrize(alpha * q.cov + (1.0 - alpha) * p.cov);
    const double scale = std::max(1.0, linalg::spectral_norm(mix));
    if (!(linalg::min_eigenvalue(mix) > tol.domain * scale)) return Divergence::infinite();
    const double quad = d.isZero(0.0) ? 0.0 : d.dot(mix.llt().solve(d));
    const double ld_mix = linalg::logdet_pd(mix);
    return Divergence::finite(0.5 * alpha * quad -
                              (ld_mix - (1.0 - alpha) * ld_p - alpha * ld_q) /
                                  (2.0 * (alpha - 1.0)));
}

ClassicalGaussian outcome_distribution(const GaussianState& state, const Matrix& gamma) {
    if (gamma.rows() != state.cov().mat().rows() || gamma.cols() != gamma.rows()) {
        throw DimensionError("seed and state have different sizes");
    }
    return {state.mean(), symmetrize(0.5 * (state.cov().mat() + gamma))};
}

double measured_dmax_for_seed(const GaussianState& rho, const GaussianState& sigma,
                              const Matrix& gamma, const Tolerances& tol) {
    require_ordered(rho.cov(), sigma.cov(), tol);
    if (gamma.rows() != rho.cov().mat().rows() || gamma.cols() != gamma.rows()) {
        throw InvalidSeed("seed has the wrong size");
    }
    if (linalg::asymmetry(gamma) > tol.symmetry || !check_bona_fide(gamma, tol).ok) {
        throw InvalidSeed("seed covariance violates the bona fide condition");
    }
    const Divergence d =
        classical_gauss_dmax(outcome_distribution(rho, gamma), outcome_distribution(sigma, gamma), tol);
    return d.value();
}

double seed_objective(const Matrix& v_rho, const Matrix& v_sigma, const Matrix& gamma) {
    const double num = (v_sigma + gamma).partialPivLu().determinant();
    const double den = (v_rho + gamma).partialPivLu().determinant();
    const double ratio = num / den;
    if (!(ratio > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return 0.5 * std::log(ratio);
}

}  // namespace gdisc
