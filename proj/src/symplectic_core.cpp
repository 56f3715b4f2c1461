#include "gdisc/symplectic_core.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "gdisc/errors.hpp"

namespace gdisc {

using linalg::symmetrize;

PhaseSpaceMatrix::PhaseSpaceMatrix(const Matrix& m, const Tolerances& tol) {
    modes_of(m);
    const double asym = linalg::asymmetry(m);
    if (asym > tol.symmetry) {
        throw DimensionError("phase-space matrix is not symmetric (relative asymmetry " +
                             std::to_string(asym) + ")");
    }
    m_ = symmetrize(m);
}

int modes_of(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
        throw DimensionError("expected a non-empty 2N x 2N matrix, got " +
                             std::to_string(m.rows()) + " x " + std::to_string(m.cols()));
    }
    return static_cast<int>(m.rows() / 2);
}

Matrix omega(int modes) {
    if (modes < 1) throw DimensionError("mode count must be positive");
    Matrix om = Matrix::Zero(2 * modes, 2 * modes);
    for (int j = 0; j < modes; ++j) {
        om(2 * j, 2 * j + 1) = 1.0;
        om(2 * j + 1, 2 * j) = -1.0;
    }
    return om;
}

BonaFide check_bona_fide(const Matrix& v, const Tolerances& tol) {
    const int n = modes_of(v);
    const ComplexMatrix h = v.cast<std::complex<double>>() +
                            std::complex<double>(0.0, 1.0) * omega(n).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()),
                                                    Eigen::EigenvaluesOnly);
    BonaFide out;
    out.min_eigenvalue = es.eigenvalues()(0);
    const double scale = std::max(1.0, linalg::spectral_norm(v));
    out.ok = out.min_eigenvalue >= -tol.psd * scale;
    return out;
}

namespace {

// Positive eigenpairs of i V^{1/2} Omega V^{1/2}, descending.
struct AntisymmetricSpectrum {
    Matrix sqrt_v;
    std::vector<double> nu;
    ComplexMatrix vectors;  // column j pairs with nu[j]
};

AntisymmetricSpectrum antisymmetric_spectrum(const Matrix& v) {
    const int n = modes_of(v);
    AntisymmetricSpectrum out;
    out.sqrt_v = linalg::sqrt_pd(v);
    const Matrix a = out.sqrt_v * omega(n) * out.sqrt_v;
    const ComplexMatrix h = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
    out.vectors.resize(2 * n, n);
    for (int j = 0; j < n; ++j) {
        const int idx = 2 * n - 1 - j;
        out.nu.push_back(es.eigenvalues()(idx));
        out.vectors.col(j) = es.eigenvectors().col(idx);
    }
    return out;
}

}  // namespace

std::vector<double> symplectic_eigenvalues(const Matrix& v) {
    return antisymmetric_spectrum(v).nu;
}

WilliamsonDecomposition williamson(const Matrix& v) {
    const int n = modes_of(v);
    const AntisymmetricSpectrum spec = antisymmetric_spectrum(v);

    // Columns (y_j, x_j) with w_j = (x_j + i y_j)/sqrt(2) give O^T A O = (+)_j nu_j Omega_2.
    Matrix o(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        const ComplexVector w = std::sqrt(2.0) * spec.vectors.col(j);
        o.col(2 * j) = w.imag();
        o.col(2 * j + 1) = w.real();
    }

    // Fix the U(1) phase of each non-degenerate pair: rotate so the 2x2 block
    // on the mode carrying most of the weight is as close to identity as possible.
    for (int j = 0; j < n; ++j) {
        const bool degenerate =
            (j > 0 && std::abs(spec.nu[j] - spec.nu[j - 1]) < 1e-9 * spec.nu[j]) ||
            (j + 1 < n && std::abs(spec.nu[j] - spec.nu[j + 1]) < 1e-9 * spec.nu[j]);
        if (degenerate) continue;
        int best = 0;
        double best_w = -1.0;
        for (int k = 0; k < n; ++k) {
            const double w = o.block(2 * k, 2 * j, 2, 2).squaredNorm();
            if (w > best_w + 1e-12) {
                best_w = w;
                best = k;
            }
        }
        const Eigen::Matrix2d p = o.block(2 * best, 2 * j, 2, 2);
        const double theta = std::atan2(p(0, 1) - p(1, 0), p(0, 0) + p(1, 1));
        Eigen::Matrix2d r;
        r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
        o.middleCols(2 * j, 2) = o.middleCols(2 * j, 2) * r;
    }

    Vector d_inv_sqrt(2 * n);
    for (int j = 0; j < n; ++j) {
        d_inv_sqrt(2 * j) = d_inv_sqrt(2 * j + 1) = 1.0 / std::sqrt(spec.nu[j]);
    }
    WilliamsonDecomposition out;
    out.nu = spec.nu;
    out.symplectic = d_inv_sqrt.asDiagonal() * o.transpose() * spec.sqrt_v;
    return out;
}

Matrix symplectic_inverse(const Matrix& s) {
    const Matrix om = omega(modes_of(s));
    return om * s.transpose() * om.transpose();
}

Matrix matrix_G(const Matrix& v, Side side, const Tolerances& tol) {
    const int n = modes_of(v);
    const Matrix om = omega(n);

    if (linalg::min_eigenvalue(v) > 0.0) {
        // V Omega = W (W Omega W) W^{-1}; the middle factor is antisymmetric, so
        // 1 + (W Omega W)^{-2} is symmetric with spectrum 1 - 1/nu^2.
        const Matrix w = linalg::sqrt_pd(v);
        const Matrix w_inv = linalg::inv_sqrt_pd(v);
        const Matrix a_inv = w_inv * om.transpose() * w_inv;
        const Matrix arg = symmetrize(Matrix::Identity(2 * n, 2 * n) + a_inv * a_inv);
        const double lo = linalg::min_eigenvalue(arg);
        if (lo < -tol.g_argument) {
            throw DomainError("G argument has negative eigenvalue " + std::to_string(lo), lo);
        }
        const Matrix root = linalg::sym_apply(arg, [](double x) { return std::sqrt(std::max(x, 0.0)); });
        return side == Side::Left ? Matrix(w * root * w_inv) : Matrix(w_inv * root * w);
    }

    const Matrix prod = side == Side::Left ? Matrix(v * om) : Matrix(om * v);
    Eigen::FullPivLU<Matrix> lu(prod);
    if (!lu.isInvertible()) throw DomainError("V Omega is singular", 0.0);
    const Matrix inv = lu.inverse();
    const Matrix arg = Matrix::Identity(2 * n, 2 * n) + inv * inv;
    Eigen::EigenSolver<Matrix> es(arg);
    const auto& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    Eigen::VectorXcd root(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i).imag()) > 1e-9 * scale) {
            throw DomainError("G argument has complex spectrum", ev(i).imag());
        }
        if (ev(i).real() < -tol.g_argument) {
            throw DomainError("G argument has negative eigenvalue", ev(i).real());
        }
        root(i) = std::sqrt(std::max(ev(i).real(), 0.0));
    }
    const ComplexMatrix p = es.eigenvectors();
    return (p * root.asDiagonal() * p.inverse()).real();
}

Matrix geometric_mean(const Matrix& a, const Matrix& b, double t) {
    linalg::require_pd(a, "geometric mean left argument");
    linalg::require_pd(b, "geometric mean right argument");
    const Matrix a_half = linalg::sqrt_pd(a);
    const Matrix a_inv_half = linalg::inv_sqrt_pd(a);
    const Matrix inner = linalg::pow_pd(symmetrize(a_inv_half * b * a_inv_half), t);
    return symmetrize(a_half * inner * a_half);
}

bool is_pure_cov(const Matrix& v, const Tolerances& tol) {
    const Matrix om = omega(modes_of(v));
    linalg::require_pd(v, "covariance");
    const Matrix dual = om * linalg::sym_inverse(v, "covariance").inverse * om.transpose();
    return (v - dual).norm() <= tol.purity * v.norm();
}

Matrix arcoth_matrix(const Matrix& x, const Tolerances& tol) {
    const auto arcoth = [&](double e) {
        if (!(e > 1.0 + tol.domain)) {
            throw DomainError("arcoth argument has eigenvalue " + std::to_string(e) + " <= 1", e);
        }
        return 0.5 * std::log((e + 1.0) / (e - 1.0));
    };
    if (x.rows() != x.cols()) throw DimensionError("arcoth needs a square matrix");
    if (linalg::asymmetry(x) <= 1e-12) return linalg::sym_apply(x, arcoth);

    Eigen::EigenSolver<Matrix> es(x);
    const auto& ev = es.eigenvalues();
    Eigen::VectorXcd f(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i).imag()) > 1e-9 * std::max(1.0, std::abs(ev(i)))) {
            throw DomainError("arcoth argument has complex spectrum", ev(i).imag());
        }
        f(i) = arcoth(ev(i).real());
    }
    const ComplexMatrix p = es.eigenvectors();
    return (p * f.asDiagonal() * p.inverse()).real();
}

Matrix random_orthogonal_symplectic(int modes, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix z(modes, modes);
    for (int i = 0; i < modes; ++i)
        for (int j = 0; j < modes; ++j) z(i, j) = {g(rng), g(rng)};
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < modes; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0) q.col(j) *= r(j, j) / mag;
    }
    Matrix o(2 * modes, 2 * modes);
    for (int j = 0; j < modes; ++j) {
        for (int k = 0; k < modes; ++k) {
            const double x = q(j, k).real();
            const double y = q(j, k).imag();
            o.block(2 * j, 2 * k, 2, 2) << x, -y, y, x;
        }
    }
    return o;
}

Matrix random_symplectic(int modes, double squeeze_max, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-squeeze_max, squeeze_max);
    Vector z(2 * modes);
    for (int j = 0; j < modes; ++j) {
        const double s = std::exp(u(rng));
        z(2 * j) = s;
        z(2 * j + 1) = 1.0 / s;
    }
    const Matrix o1 = random_orthogonal_symplectic(modes, rng);
    const Matrix o2 = random_orthogonal_symplectic(modes, rng);
    return o1 * z.asDiagonal() * o2;
}

Matrix random_cov(int modes, const RandomCovSpec& spec, std::uint64_t rng_seed) {
    if (modes < 1) throw DimensionError("mode count must be positive");
    if (!(spec.nu_min >= 1.0) || !(spec.nu_max >= spec.nu_min) || !(spec.squeeze_max >= 0.0)) {
        throw std::invalid_argument("random_cov: invalid thermal or squeezing range");
    }
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> th(spec.nu_min, spec.nu_max);
    Vector d(2 * modes);
    for (int j = 0; j < modes; ++j) d(2 * j) = d(2 * j + 1) = th(rng);

    Matrix s;
    if (spec.rotate) {
        s = random_symplectic(modes, spec.squeeze_max, rng);
    } else {
        std::uniform_real_distribution<double> u(-spec.squeeze_max, spec.squeeze_max);
        Vector z(2 * modes);
        for (int j = 0; j < modes; ++j) {
            const double e = std::exp(u(rng));
            z(2 * j) = e;
            z(2 * j + 1) = 1.0 / e;
        }
        s = z.asDiagonal();
    }
    return symmetrize(s.transpose() * d.asDiagonal() * s);
}

}  // namespace gdisc
