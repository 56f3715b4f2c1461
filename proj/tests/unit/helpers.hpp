#pragma once

#include <cmath>
#include <random>

#include "gdisc/symplectic_core.hpp"

namespace testutil {

using gdisc::Matrix;
using gdisc::Vector;

inline Matrix diag2(double x, double y) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = x;
    m(1, 1) = y;
    return m;
}

inline Matrix eye(int n) { return Matrix::Identity(n, n); }

inline Matrix rot2(double t) {
    Matrix r(2, 2);
    r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return r;
}

inline Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    return m;
}

inline double rel_diff(const Matrix& a, const Matrix& b) {
    return (a - b).norm() / std::max(1.0, b.norm());
}

/// Random pure covariance S S^T.
inline Matrix random_pure(int modes, std::mt19937_64& rng, double squeeze = 1.0) {
    const Matrix s = gdisc::random_symplectic(modes, squeeze, rng);
    return s * s.transpose();
}

/// Random positive definite d x d matrix with spectrum in [lo, hi].
inline Matrix random_spd(int d, double lo, double hi, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ud(lo, hi);
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = nd(rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    const Matrix q = qr.householderQ();
    Vector ev(d);
    for (int i = 0; i < d; ++i) ev(i) = ud(rng);
    return q * ev.asDiagonal() * q.transpose();
}

/// Random single-mode standard-form pair with V_sigma - V_rho >= gap.
struct Sf {
    double a, b, mu;
};

inline Sf random_standard_form(std::mt19937_64& rng, double gap = 1e-3) {
    std::uniform_real_distribution<double> ua(1.0, 6.0), ub(1.01, 8.0), lm(-2.0, 2.0);
    for (;;) {
        const double a = ua(rng), b = ub(rng), mu = std::exp(lm(rng));
        if (std::min(b - a * mu, b - a / mu) > gap) return {a, b, mu};
    }
}

}  // namespace testutil
