#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "gdisc/tolerances.hpp"

namespace gdisc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Collects non-fatal numerical diagnostics (ill-conditioned inverses and
/// the like). Functions take an optional pointer and append to it.
struct Warnings {
    std::vector<std::string> messages;
    void add(std::string msg) { messages.push_back(std::move(msg)); }
    bool empty() const { return messages.empty(); }
};

namespace linalg {

Matrix symmetrize(const Matrix& a);

/// Largest |a_ij - a_ji| relative to the largest |a_ij|.
double asymmetry(const Matrix& a);

double min_eigenvalue(const Matrix& sym);
double max_eigenvalue(const Matrix& sym);

/// Spectral norm of a symmetric matrix.
double spectral_norm(const Matrix& sym);

/// f applied to the spectrum of a symmetric matrix.
template <typename F>
Matrix sym_apply(const Matrix& sym, F&& f) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(sym));
    Vector d = es.eigenvalues().unaryExpr([&](double x) { return f(x); });
    return symmetrize(es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose());
}

/// Principal square root of a positive definite matrix; throws
/// NotPositiveDefinite otherwise.
Matrix sqrt_pd(const Matrix& a);
Matrix inv_sqrt_pd(const Matrix& a);
Matrix pow_pd(const Matrix& a, double t);

/// Throws NotPositiveDefinite with `what` when min eigenvalue <= floor.
void require_pd(const Matrix& a, const std::string& what, double floor = 0.0);

struct SymmetricInverse {
    Matrix inverse;
    double condition = 1.0;  // |lambda|_max / |lambda|_min
};

/// Inverse of a symmetric (possibly indefinite) matrix via its
/// eigendecomposition. Throws DomainError when numerically singular.
/// Reports the condition number and, when `warn` is set, records a message
/// for conditions above tol.condition_warn.
SymmetricInverse sym_inverse(const Matrix& a, const char* what, Warnings* warn = nullptr,
                             const Tolerances& tol = default_tolerances());

/// exp(K) for real antisymmetric K, through the Hermitian matrix iK.
Matrix expm_antisymmetric(const Matrix& k);

/// Natural log of the determinant of a positive definite matrix.
double logdet_pd(const Matrix& a);

}  // namespace linalg
}  // namespace gdisc
