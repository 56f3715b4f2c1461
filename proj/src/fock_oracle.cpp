#include "gdisc/fock_oracle.hpp"

#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>

#include "gdisc/errors.hpp"

namespace gdisc {

namespace {

using cd = std::complex<double>;

struct Shape {
    double a = 1.0;
    double mu = 1.0;
    double phi = 0.0;
    cd beta = 0.0;
};

Shape shape_of(const Matrix& cov, const Vector& mean) {
    if (cov.rows() != 2 || cov.cols() != 2 || mean.size() != 2) {
        throw DimensionError("the Fock oracle is single-mode");
    }
    const Matrix v = linalg::symmetrize(cov);
    Shape s;
    s.a = std::sqrt(v.determinant());
    s.phi = 0.5 * std::atan2(2.0 * v(0, 1), v(0, 0) - v(1, 1));
    const double c = std::cos(s.phi);
    const double sn = std::sin(s.phi);
    const double major = c * c * v(0, 0) + 2 * c * sn * v(0, 1) + sn * sn * v(1, 1);
    s.mu = major / s.a;
    s.beta = cd(mean(0), mean(1)) / std::sqrt(2.0);
    return s;
}

// U = D(beta) R(phi) S(r) on `dim` levels.
ComplexMatrix gaussian_unitary(const Shape& s, int dim) {
    const ComplexMatrix a = annihilation(dim);
    const ComplexMatrix ad = a.adjoint();
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    const double r = 0.5 * std::log(s.mu);
    if (r != 0.0) u = expm_antihermitian(0.5 * r * (ad * ad - a * a));
    if (s.phi != 0.0) {
        for (int n = 0; n < dim; ++n) u.row(n) *= std::exp(cd(0.0, s.phi * n));
    }
    if (s.beta != cd(0.0)) u = expm_antihermitian(s.beta * ad - std::conj(s.beta) * a) * u;
    return u;
}

FockOperator build_state(const Shape& s, int cutoff, const FockOptions& opts) {
    if (cutoff < 2) throw std::invalid_argument("cutoff must be >= 2");
    if (!(s.a >= 1.0 - 1e-10)) throw InvalidState("a < 1 is not a state");
    const int dim = cutoff + opts.padding;
    const double x = std::max(0.0, (s.a - 1.0) / (s.a + 1.0));
    Vector p(dim);
    double xn = 1.0;
    for (int n = 0; n < dim; ++n) {
        p(n) = (1.0 - x) * xn;
        xn *= x;
    }
    const ComplexMatrix u = gaussian_unitary(s, dim);
    const ComplexMatrix full = u * p.cast<cd>().asDiagonal() * u.adjoint();

    FockOperator out;
    out.cutoff = cutoff;
    out.matrix = full.topLeftCorner(cutoff, cutoff);
    out.matrix = 0.5 * (out.matrix + out.matrix.adjoint()).eval();
    out.trace_deficit = 1.0 - out.matrix.trace().real();
    if (out.trace_deficit > opts.max_trace_deficit) {
        throw TruncationError("trace deficit " + format_real(out.trace_deficit) + " at cutoff " +
                                  std::to_string(cutoff) + " exceeds " +
                                  format_real(opts.max_trace_deficit),
                              out.trace_deficit);
    }
    return out;
}

}  // namespace

ComplexMatrix annihilation(int cutoff) {
    if (cutoff < 2) throw std::invalid_argument("cutoff must be >= 2");
    ComplexMatrix a = ComplexMatrix::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

ComplexMatrix expm_antihermitian(const ComplexMatrix& g) {
    const ComplexMatrix h = cd(0.0, -1.0) * g;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
    const ComplexVector ph =
        es.eigenvalues().unaryExpr([](double x) { return std::exp(cd(0.0, x)); });
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

FockOperator squeezed_thermal_fock(double a, double mu, int cutoff, const FockOptions& opts) {
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    Shape s;
    s.a = a;
    s.mu = mu;
    if (mu < 1.0) {
        s.mu = 1.0 / mu;
        s.phi = M_PI / 2;
    }
    return build_state(s, cutoff, opts);
}

FockOperator gaussian_state_fock(const GaussianState& state, int cutoff, const FockOptions& opts) {
    return build_state(shape_of(state.cov(), state.mean()), cutoff, opts);
}

ComplexVector pure_gaussian_vector(const Matrix& cov, const Vector& mean, int cutoff,
                                   int padding) {
    Shape s = shape_of(cov, mean);
    if (std::abs(s.a - 1.0) > 1e-8) throw InvalidSeed("seed covariance is not pure");
    s.a = 1.0;
    const int dim = cutoff + padding;
    return gaussian_unitary(s, dim).col(0).head(cutoff);
}

LikelihoodSpectrum likelihood_top_eig(const FockOperator& rho, const FockOperator& sigma,
                                      double floor) {
    if (rho.cutoff != sigma.cutoff) throw DimensionError("cutoffs differ");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sigma.matrix);
    const Vector& ev = es.eigenvalues();
    std::vector<int> keep;
    for (int i = 0; i < ev.size(); ++i) {
        if (ev(i) > floor) keep.push_back(i);
    }
    LikelihoodSpectrum out;
    out.excluded = static_cast<int>(ev.size() - keep.size());
    if (keep.size() < 2) throw DomainError("sigma has fewer than two eigenvalues above the floor", ev.maxCoeff());
    const int k = static_cast<int>(keep.size());
    ComplexMatrix w(sigma.cutoff, k);  // V Lambda^{-1/2} on the kept subspace
    for (int j = 0; j < k; ++j) w.col(j) = es.eigenvectors().col(keep[j]) / std::sqrt(ev(keep[j]));
    ComplexMatrix m = w.adjoint() * rho.matrix * w;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> ms(0.5 * (m + m.adjoint()));
    out.lambda1 = ms.eigenvalues()(k - 1);
    out.lambda2 = ms.eigenvalues()(k - 2);
    // Top eigenvector of the Hermitian matrix sigma^{-1/2} rho sigma^{-1/2},
    // expressed in the Fock basis.
    ComplexMatrix basis(sigma.cutoff, k);
    for (int j = 0; j < k; ++j) basis.col(j) = es.eigenvectors().col(keep[j]);
    out.top = basis * ms.eigenvectors().col(k - 1);
    return out;
}

double projector_ratio(const FockOperator& rho, const FockOperator& sigma, const Matrix& seed_cov,
                       const Vector& seed_mean, int padding) {
    if (rho.cutoff != sigma.cutoff) throw DimensionError("cutoffs differ");
    const ComplexVector psi = pure_gaussian_vector(seed_cov, seed_mean, rho.cutoff, padding);
    const double num = psi.dot(rho.matrix * psi).real();
    const double den = psi.dot(sigma.matrix * psi).real();
    if (!(den > 1e-300)) throw DomainError("<psi|sigma|psi> vanishes", den);
    return num / den;
}

OverlapCheck overlap_check(const FockOperator& rho, const FockOperator& sigma,
                           const Matrix& seed_cov, const Vector& seed_mean, double slack,
                           int padding) {
    const LikelihoodSpectrum spec = likelihood_top_eig(rho, sigma);
    OverlapCheck out;
    out.lambda1 = spec.lambda1;
    out.lambda2 = spec.lambda2;
    const ComplexVector psi = pure_gaussian_vector(seed_cov, seed_mean, rho.cutoff, padding);
    const double num = psi.dot(rho.matrix * psi).real();
    const double den = psi.dot(sigma.matrix * psi).real();
    out.epsilon = spec.lambda1 - num / den;

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sigma.matrix);
    const Vector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const ComplexVector phi =
        es.eigenvectors() * (root.cast<cd>().asDiagonal() * (es.eigenvectors().adjoint() * psi)) /
        std::sqrt(den);
    out.overlap = std::norm(spec.top.dot(phi)) / spec.top.squaredNorm();

    const double gap = spec.lambda1 - spec.lambda2;
    if (gap < 1e-8) {
        out.skipped = true;
        out.passed = true;
        return out;
    }
    out.bound = 1.0 - out.epsilon / gap;
    out.passed = out.overlap >= out.bound - slack;
    return out;
}

std::vector<ConvergenceRow> convergence_check(
    const std::function<FockOperator(int)>& build,
    const std::function<double(const FockOperator&)>& quantity, const std::vector<int>& cutoffs) {
    std::vector<ConvergenceRow> rows;
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
        if (i > 0 && cutoffs[i] <= cutoffs[i - 1]) {
            throw std::invalid_argument("cutoffs must increase");
        }
        const FockOperator op = build(cutoffs[i]);
        ConvergenceRow row;
        row.cutoff = cutoffs[i];
        row.trace_deficit = op.trace_deficit;
        row.value = quantity(op);
        if (!rows.empty()) row.delta = row.value - rows.back().value;
        rows.push_back(row);
    }
    return rows;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    os << "cutoff,trace_deficit,value,delta\n";
    for (const auto& r : rows) {
        os << r.cutoff << ',' << format_real(r.trace_deficit) << ',' << format_real(r.value) << ','
           << format_real(r.delta) << '\n';
    }
}

}  // namespace gdisc
