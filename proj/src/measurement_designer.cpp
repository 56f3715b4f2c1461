#include "gdisc/measurement_designer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gdisc/errors.hpp"

namespace gdisc {

using linalg::symmetrize;

namespace {

Matrix g_times_v(const Matrix& v, const Tolerances& tol) {
    return symmetrize(matrix_G(v, Side::Left, tol) * v);
}

bool near(double x, double target, double rel) {
    return std::abs(x - target) <= rel * std::max(1.0, std::abs(target));
}

}  // namespace

PhaseSpaceMatrix f_sigma(const Matrix& v_sigma, const Matrix& v_psi, Warnings* warn,
                         const Tolerances& tol) {
    if (modes_of(v_sigma) != modes_of(v_psi)) throw DimensionError("mode counts differ");
    const std::vector<double> nu = symplectic_eigenvalues(v_sigma);
    if (!(nu.back() > 1.0 + tol.domain)) {
        throw DomainError("f_sigma needs V_sigma with every symplectic eigenvalue > 1", nu.back());
    }
    if (!check_bona_fide(v_psi, tol).ok) throw InvalidSeed("V_psi is not bona fide");
    const Matrix x = g_times_v(v_sigma, tol);
    const auto inv = linalg::sym_inverse(v_sigma + v_psi, "V_sigma + V_psi", warn, tol);
    return PhaseSpaceMatrix(symmetrize(v_sigma - x * inv.inverse * x), tol);
}

Matrix gamma_opt(const Matrix& v_rho, const Matrix& v_sigma, Warnings* warn,
                 const Tolerances& tol) {
    const PhaseSpaceMatrix vm = likelihood_cov(v_rho, v_sigma, warn, tol);
    const PhaseSpaceMatrix vz = top_eigvec_cov(vm, tol);
    const Matrix x = g_times_v(v_sigma, tol);
    const auto inv = linalg::sym_inverse(vz.mat() - v_sigma, "V_zeta - V_sigma", warn, tol);
    return symmetrize(-v_sigma - x * inv.inverse * x);
}

const char* to_string(Case c) {
    switch (c) {
        case Case::AchievableFinite: return "AchievableFinite";
        case Case::AchievableLimit: return "AchievableLimit";
        case Case::Gap: return "Gap";
    }
    return "?";
}

Classification classify(const Matrix& v_rho, const Matrix& v_sigma, Warnings* warn,
                        const Tolerances& tol) {
    require_ordered(v_rho, v_sigma, tol);
    Classification out;
    const PhaseSpaceMatrix vz = top_eigvec_cov(likelihood_cov(v_rho, v_sigma, warn, tol), tol);
    out.margin = linalg::min_eigenvalue(v_sigma - vz.mat());
    out.band = tol.class_rel * linalg::spectral_norm(v_sigma);

    if (std::abs(out.margin) <= out.band) {
        out.kind = Case::AchievableLimit;
        return out;
    }
    out.kind = out.margin > 0 ? Case::AchievableFinite : Case::Gap;
    Matrix g;
    try {
        g = gamma_opt(v_rho, v_sigma, warn, tol);
    } catch (const DomainError&) {
        out.prop1_consistent = false;
        return out;
    }
    const bool bona_fide = check_bona_fide(g, tol).ok;
    out.prop1_consistent = bona_fide == (out.kind == Case::AchievableFinite);
    if (out.kind == Case::AchievableFinite && bona_fide) out.gamma_opt.emplace(g, tol);
    return out;
}

StandardFormParams standard_form_reduce(const Matrix& v_rho, const Matrix& v_sigma,
                                        const Tolerances& tol) {
    if (modes_of(v_rho) != 1 || modes_of(v_sigma) != 1) {
        throw DimensionError("standard form needs single-mode covariances");
    }
    linalg::require_pd(v_rho, "V_rho");
    linalg::require_pd(v_sigma, "V_sigma");
    const WilliamsonDecomposition w = williamson(v_sigma);
    const Matrix t0 = symplectic_inverse(w.symplectic);
    const Matrix r = symmetrize(t0.transpose() * v_rho * t0);

    // Rotation taking the major axis of r onto the position quadrature.
    const double theta = 0.5 * std::atan2(2.0 * r(0, 1), r(0, 0) - r(1, 1));
    Matrix q(2, 2);
    q << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    const Matrix d = q.transpose() * r * q;

    StandardFormParams p;
    p.reducing_symplectic = t0 * q;
    p.b = w.nu[0];
    p.a = std::sqrt(v_rho.determinant());
    p.mu = std::sqrt(d(0, 0) / d(1, 1));

    const Matrix& t = p.reducing_symplectic;
    Matrix expect_rho = Matrix::Zero(2, 2);
    expect_rho(0, 0) = p.a * p.mu;
    expect_rho(1, 1) = p.a / p.mu;
    const double res_rho = (t.transpose() * v_rho * t - expect_rho).norm() / expect_rho.norm();
    const double res_sigma =
        (t.transpose() * v_sigma * t - p.b * Matrix::Identity(2, 2)).norm() / p.b;
    if (res_rho > tol.reconstruct || res_sigma > tol.reconstruct) {
        throw Error("standard form residual too large (" + format_real(std::max(res_rho, res_sigma)) +
                    ")");
    }
    return p;
}

std::pair<double, double> mu_interval(double a, double b) {
    return {b * (a * a + 1.0) / (a * (b * b + 1.0)), a * (b * b + 1.0) / (b * (a * a + 1.0))};
}

double single_mode_zopt(double a, double b, double mu, const Tolerances& tol) {
    const auto [lo, hi] = mu_interval(a, b);
    if (!(mu > lo * (1.0 + tol.domain) && mu < hi * (1.0 - tol.domain))) {
        throw DomainError("mu = " + format_real(mu) + " is not inside (" + format_real(lo) + ", " +
                              format_real(hi) + ")",
                          mu);
    }
    const double radicand = (a * b - mu) * (a * mu - b) * (a - b * mu) * (a * b * mu - 1.0);
    if (radicand < -tol.zopt_argument) {
        throw DomainError("negative radicand in z_opt", radicand);
    }
    const double num = a * b * (mu * mu - 1.0) + std::sqrt(std::max(radicand, 0.0));
    const double den = a * (b * b + 1.0) - (a * a + 1.0) * b * mu;
    return num / den;
}

double single_mode_objective(double a, double b, double mu, double z) {
    if (std::isinf(z)) return 0.5 * std::log(b * mu / a);
    if (z == 0.0) return 0.5 * std::log(b / (a * mu));
    return 0.5 * std::log(mu * (b + z) * (b * z + 1.0) / ((a * z + mu) * (a * mu + z)));
}

SingleModeBranch single_mode_branch(double a, double b, double mu, const Tolerances& tol) {
    if (!(a >= 1.0 - tol.psd) || !(b > 1.0) || !(mu > 0.0)) {
        throw DomainError("need a >= 1, b > 1, mu > 0", mu);
    }
    const double upper = b / a;
    const double lower = a / b;
    if (near(mu, upper, tol.domain) || near(mu, lower, tol.domain)) {
        throw DomainError("mu = " + format_real(mu) +
                              " makes V_sigma - V_rho singular (mu = b/a or a/b)",
                          mu);
    }
    if (mu > upper || mu < lower) return SingleModeBranch::Infinite;
    const auto [lo, hi] = mu_interval(a, b);
    if (mu >= hi) return SingleModeBranch::HomodyneP;
    if (mu <= lo) return SingleModeBranch::HomodyneQ;
    return SingleModeBranch::Interior;
}

double single_mode_branch_value(double a, double b, double mu, SingleModeBranch branch,
                                const Tolerances& tol) {
    switch (branch) {
        case SingleModeBranch::Interior: {
            const auto [lo, hi] = mu_interval(a, b);
            if (mu >= hi * (1.0 - tol.domain)) {
                return single_mode_objective(a, b, mu, std::numeric_limits<double>::infinity());
            }
            if (mu <= lo * (1.0 + tol.domain)) return single_mode_objective(a, b, mu, 0.0);
            return single_mode_objective(a, b, mu, single_mode_zopt(a, b, mu, tol));
        }
        case SingleModeBranch::HomodyneP: return 0.5 * std::log(b * mu / a);
        case SingleModeBranch::HomodyneQ: return 0.5 * std::log(b / (a * mu));
        case SingleModeBranch::Infinite: return std::numeric_limits<double>::infinity();
    }
    return std::numeric_limits<double>::quiet_NaN();
}

Divergence single_mode_gdmax(double a, double b, double mu, const Tolerances& tol) {
    const SingleModeBranch br = single_mode_branch(a, b, mu, tol);
    if (br == SingleModeBranch::Infinite) return Divergence::infinite();
    return Divergence::finite(single_mode_branch_value(a, b, mu, br, tol));
}

double single_mode_dmax(double a, double b, double mu, std::optional<double> d1,
                        std::optional<double> d2) {
    const double e1 = d1.value_or(b - a * mu);
    const double e2 = d2.value_or(b - a / mu);
    if (!(e1 > 0.0) || !(e2 > 0.0)) {
        throw DomainError("standard-form pair is not ordered (b - a mu or b - a/mu <= 0)",
                          std::min(e1, e2));
    }
    const double pure = std::sqrt(std::max(0.0, (a * b * mu - 1.0) * (a * b - mu) / mu));
    return std::log((b - 1.0) * (b + 1.0)) - std::log(std::sqrt(e1 * e2) + pure);
}

const char* to_string(GdmaxMethod m) {
    switch (m) {
        case GdmaxMethod::SingleMode: return "single_mode_closed_form";
        case GdmaxMethod::BlockProduct: return "block_product";
        case GdmaxMethod::Numeric: return "numeric";
    }
    return "?";
}

namespace {

bool is_block_diagonal(const Matrix& m, double rel) {
    const double scale = m.cwiseAbs().maxCoeff();
    const Eigen::Index n = m.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i / 2 != j / 2 && std::abs(m(i, j)) > rel * scale) return false;
        }
    }
    return true;
}

struct SingleModeResult {
    double value = 0.0;
    std::optional<Matrix> seed;
    bool homodyne = false;
};

SingleModeResult single_mode_zero_mean(const Matrix& v_rho, const Matrix& v_sigma,
                                       const Tolerances& tol) {
    const StandardFormParams sf = standard_form_reduce(v_rho, v_sigma, tol);
    const SingleModeBranch br = single_mode_branch(sf.a, sf.b, sf.mu, tol);
    SingleModeResult out;
    out.value = single_mode_branch_value(sf.a, sf.b, sf.mu, br, tol);
    if (br == SingleModeBranch::Interior) {
        const double z = single_mode_zopt(sf.a, sf.b, sf.mu, tol);
        Matrix g = Matrix::Zero(2, 2);
        g(0, 0) = z;
        g(1, 1) = 1.0 / z;
        const Matrix tinv = symplectic_inverse(sf.reducing_symplectic);
        out.seed = symmetrize(tinv.transpose() * g * tinv);
    } else {
        out.homodyne = true;
    }
    return out;
}

}  // namespace

std::optional<Matrix> detect_product_frame(const Matrix& v_rho, const Matrix& v_sigma,
                                           const Tolerances& tol) {
    const int n = modes_of(v_rho);
    if (modes_of(v_sigma) != n) throw DimensionError("mode counts differ");
    if (n == 1 || (is_block_diagonal(v_rho, tol.block) && is_block_diagonal(v_sigma, tol.block))) {
        return Matrix::Identity(2 * n, 2 * n);
    }
    const Matrix t = symplectic_inverse(williamson(v_sigma).symplectic);
    if (is_block_diagonal(t.transpose() * v_rho * t, tol.block)) return t;
    return std::nullopt;
}

GdmaxResult gdmax(const GaussianState& rho, const GaussianState& sigma,
                  const OptimizerOptions& opts, Warnings* warn, const Tolerances& tol) {
    const Matrix& vr = rho.cov();
    const Matrix& vs = sigma.cov();
    require_ordered(vr, vs, tol);
    GdmaxResult out;
    out.displacement = displacement_term(rho, sigma, tol);

    if (rho.modes() == 1) {
        const SingleModeResult r = single_mode_zero_mean(vr, vs, tol);
        out.method = GdmaxMethod::SingleMode;
        out.zero_mean = Divergence::finite(r.value);
        out.seed = r.seed;
        out.homodyne_limit = r.homodyne;
        out.block_values = {r.value};
    } else if (auto frame = detect_product_frame(vr, vs, tol)) {
        const Matrix& t = *frame;
        const Matrix br = symmetrize(t.transpose() * vr * t);
        const Matrix bs = symmetrize(t.transpose() * vs * t);
        const int n = rho.modes();
        Matrix seed = Matrix::Zero(2 * n, 2 * n);
        bool all_seeds = true;
        double total = 0.0;
        for (int j = 0; j < n; ++j) {
            const SingleModeResult r =
                single_mode_zero_mean(br.block(2 * j, 2 * j, 2, 2), bs.block(2 * j, 2 * j, 2, 2), tol);
            total += r.value;
            out.block_values.push_back(r.value);
            out.homodyne_limit = out.homodyne_limit || r.homodyne;
            if (r.seed) {
                seed.block(2 * j, 2 * j, 2, 2) = *r.seed;
            } else {
                all_seeds = false;
            }
        }
        out.method = GdmaxMethod::BlockProduct;
        out.zero_mean = Divergence::finite(total);
        if (all_seeds) {
            const Matrix tinv = symplectic_inverse(t);
            out.seed = symmetrize(tinv.transpose() * seed * tinv);
        }
    } else {
        const SeedOptimum best =
            optimize_seed_numeric(rho, sigma, std::numeric_limits<double>::infinity(), opts, tol);
        out.method = GdmaxMethod::Numeric;
        out.zero_mean = Divergence::finite(best.value - out.displacement);
        out.seed = best.seed;
        out.homodyne_limit = best.homodyne_limit;
        out.lower_bound = true;
        if (!best.converged && warn) warn->add("seed optimizer stopped before converging");
    }
    out.value = Divergence::finite(out.zero_mean.value() + out.displacement);
    return out;
}

GaussianState data_hiding_rho(const DataHidingParams& p) {
    const double a = 1.0 + p.epsilon;
    const double mu = 1.0 + (p.kappa - 1.0) * p.epsilon * (1.0 - p.epsilon);
    Matrix v = Matrix::Zero(2, 2);
    v(0, 0) = a * mu;
    v(1, 1) = a / mu;
    return GaussianState(v);
}

GaussianState data_hiding_sigma(const DataHidingParams& p) {
    return GaussianState((1.0 + p.kappa * p.epsilon) * Matrix::Identity(2, 2));
}

DataHidingReport data_hiding_family(const DataHidingParams& p, bool with_kl,
                                    const OptimizerOptions& opts, const Tolerances& tol) {
    if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) {
        throw DomainError("epsilon must lie in (0, 1)", p.epsilon);
    }
    if (!(p.kappa > 1.0)) throw DomainError("kappa must exceed 1", p.kappa);

    DataHidingReport r;
    const double eps = p.epsilon;
    const double k = p.kappa;
    r.a = 1.0 + eps;
    r.b = 1.0 + k * eps;
    r.mu = 1.0 + (k - 1.0) * eps * (1.0 - eps);

    // b - a mu = (kappa - 1) eps^3 exactly; the subtraction would lose it.
    const double d1 = (k - 1.0) * eps * eps * eps;
    const auto [lo, hi] = mu_interval(r.a, r.b);
    double dg = 0.0;
    if (r.mu >= hi) {
        dg = single_mode_branch_value(r.a, r.b, r.mu, SingleModeBranch::HomodyneP, tol);
    } else if (r.mu <= lo) {
        dg = single_mode_branch_value(r.a, r.b, r.mu, SingleModeBranch::HomodyneQ, tol);
    } else {
        dg = single_mode_branch_value(r.a, r.b, r.mu, SingleModeBranch::Interior, tol);
    }
    r.dgmax = Divergence::finite(dg);
    r.dmax = Divergence::finite(single_mode_dmax(r.a, r.b, r.mu, d1));
    r.gap = r.dmax.value() - dg;
    r.lead_dgmax = (k - 1.0) * eps;
    r.lead_dmax = 0.5 * std::log(k) - k * eps / 4.0;
    r.rel_dev_dgmax = std::abs(dg - r.lead_dgmax) / r.lead_dgmax;
    r.rel_dev_dmax = std::abs(r.dmax.value() - r.lead_dmax) / std::abs(r.lead_dmax);
    if (with_kl) {
        r.measured_kl =
            optimize_seed_numeric(data_hiding_rho(p), data_hiding_sigma(p), 1.0, opts, tol).value;
    }
    return r;
}

DivergenceReport divergence_report(const GaussianState& rho, const GaussianState& sigma,
                                   const OptimizerOptions& opts, const Tolerances& tol) {
    if (rho.modes() != sigma.modes()) throw DimensionError("mode counts differ");
    require_ordered(rho.cov(), sigma.cov(), tol);
    DivergenceReport rep;
    rep.modes = rho.modes();
    rep.classification = classify(rho.cov(), sigma.cov(), &rep.warnings, tol);
    rep.dmax_zero_mean = dmax_zero_mean(rho.cov(), sigma.cov(), &rep.warnings, tol);
    rep.displacement = displacement_term(rho, sigma, tol);
    rep.dmax = Divergence::finite(rep.dmax_zero_mean + rep.displacement);
    rep.dmax_arcoth = dmax_arcoth_form(rho.cov(), sigma.cov(), tol);
    rep.gdmax = gdmax(rho, sigma, opts, &rep.warnings, tol);
    if (rep.gdmax.value.is_finite()) {
        rep.gap = rep.dmax.value() - rep.gdmax.value.value();
        if (rep.classification.kind == Case::Gap) rep.classification.gap_value = rep.gap;
    }
    return rep;
}

}  // namespace gdisc
