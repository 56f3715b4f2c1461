#include "gdisc/linalg.hpp"

#include <algorithm>
#include <cstdio>

#include "gdisc/errors.hpp"

namespace gdisc::linalg {

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

double asymmetry(const Matrix& a) {
    const double scale = a.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

double min_eigenvalue(const Matrix& sym) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(sym), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

double max_eigenvalue(const Matrix& sym) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(sym), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(es.eigenvalues().size() - 1);
}

double spectral_norm(const Matrix& sym) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(sym), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

void require_pd(const Matrix& a, const std::string& what, double floor) {
    const double lo = min_eigenvalue(a);
    if (!(lo > floor)) {
        throw NotPositiveDefinite(what + " is not positive definite (min eigenvalue " +
                                      std::to_string(lo) + ")",
                                  lo);
    }
}

Matrix sqrt_pd(const Matrix& a) {
    require_pd(a, "sqrt argument");
    return sym_apply(a, [](double x) { return std::sqrt(x); });
}

Matrix inv_sqrt_pd(const Matrix& a) {
    require_pd(a, "inverse sqrt argument");
    return sym_apply(a, [](double x) { return 1.0 / std::sqrt(x); });
}

Matrix pow_pd(const Matrix& a, double t) {
    require_pd(a, "matrix power argument");
    return sym_apply(a, [t](double x) { return std::pow(x, t); });
}

SymmetricInverse sym_inverse(const Matrix& a, const char* what, Warnings* warn,
                             const Tolerances& tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(a));
    const Vector& ev = es.eigenvalues();
    const double big = ev.cwiseAbs().maxCoeff();
    const double small = ev.cwiseAbs().minCoeff();
    if (big == 0.0 || small <= big * 1e-15) {
        throw DomainError(std::string(what) + " is singular", small);
    }
    SymmetricInverse out;
    out.condition = big / small;
    out.inverse = symmetrize(es.eigenvectors() * ev.cwiseInverse().asDiagonal() *
                             es.eigenvectors().transpose());
    if (warn && out.condition > tol.condition_warn) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "ill-conditioned inverse of %s (condition %.3g)", what,
                      out.condition);
        warn->add(buf);
    }
    return out;
}

Matrix expm_antisymmetric(const Matrix& k) {
    const ComplexMatrix h = std::complex<double>(0.0, 1.0) * k.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
    // K = -i H, exp(K) = P exp(-i Lambda) P^dagger
    const ComplexVector phase = es.eigenvalues().unaryExpr(
        [](double x) { return std::exp(std::complex<double>(0.0, -x)); });
    const ComplexMatrix e = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
    return e.real();
}

double logdet_pd(const Matrix& a) {
    Eigen::LLT<Matrix> llt(symmetrize(a));
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite("log-determinant argument is not positive definite",
                                  min_eigenvalue(a));
    }
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

}  // namespace gdisc::linalg
