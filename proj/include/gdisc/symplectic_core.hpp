#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gdisc/linalg.hpp"
#include "gdisc/tolerances.hpp"

namespace gdisc {

/// Real symmetric 2N x 2N matrix in the (q1, p1, ..., qN, pN) ordering,
/// vacuum = identity. Construction validates shape and symmetry, then stores
/// the symmetrized matrix.
class PhaseSpaceMatrix {
public:
    explicit PhaseSpaceMatrix(const Matrix& m, const Tolerances& tol = default_tolerances());

    int modes() const { return static_cast<int>(m_.rows() / 2); }
    const Matrix& mat() const { return m_; }
    operator const Matrix&() const { return m_; }

private:
    Matrix m_;
};

/// Direct sum of N copies of [[0, 1], [-1, 0]].
Matrix omega(int modes);

/// Mode count of a 2N x 2N matrix; throws DimensionError otherwise.
int modes_of(const Matrix& m);

struct BonaFide {
    bool ok = false;
    double min_eigenvalue = 0.0;  // of the Hermitian matrix V + i Omega
};

/// V + i Omega >= 0, accepted down to -tol.psd * max(1, ||V||).
BonaFide check_bona_fide(const Matrix& v, const Tolerances& tol = default_tolerances());

/// Symplectic eigenvalues of V > 0, descending.
std::vector<double> symplectic_eigenvalues(const Matrix& v);

struct WilliamsonDecomposition {
    Matrix symplectic;       // S with V = S^T (+)_j nu_j I_2 S
    std::vector<double> nu;  // descending
};

/// Williamson normal form via the real antisymmetric matrix V^{1/2} Omega V^{1/2}.
/// For non-degenerate nu the residual rotation gauge is fixed so that
/// already-diagonal inputs return a diagonal S.
WilliamsonDecomposition williamson(const Matrix& v);

/// Inverse of a symplectic matrix, Omega S^T Omega^T.
Matrix symplectic_inverse(const Matrix& s);

enum class Side { Left, Right };

/// G(V Omega) = sqrt(1 + (V Omega)^{-2}) for Side::Left,
/// G(Omega V) = sqrt(1 + (Omega V)^{-2}) for Side::Right.
Matrix matrix_G(const Matrix& v, Side side, const Tolerances& tol = default_tolerances());

/// Weighted geometric mean A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}.
Matrix geometric_mean(const Matrix& a, const Matrix& b, double t = 0.5);

/// V == Omega V^{-1} Omega^T within tol.purity (relative, Frobenius).
bool is_pure_cov(const Matrix& v, const Tolerances& tol = default_tolerances());

/// arcoth applied to a diagonalizable matrix with real spectrum > 1.
/// Throws DomainError when an eigenvalue is <= 1 + tol.domain or complex.
Matrix arcoth_matrix(const Matrix& x, const Tolerances& tol = default_tolerances());

struct RandomCovSpec {
    double nu_min = 1.0;       // thermal range of symplectic eigenvalues
    double nu_max = 3.0;
    double squeeze_max = 1.0;  // |ln z| of each single-mode squeezer
    bool rotate = true;        // passive rotations before and after squeezing
};

/// Random orthogonal symplectic matrix (Haar over U(N)).
Matrix random_orthogonal_symplectic(int modes, std::mt19937_64& rng);

/// Random symplectic O1 Z O2 with |ln z_j| <= squeeze_max.
Matrix random_symplectic(int modes, double squeeze_max, std::mt19937_64& rng);

/// S^T D S with D thermal in [nu_min, nu_max]; deterministic in rng_seed.
Matrix random_cov(int modes, const RandomCovSpec& spec, std::uint64_t rng_seed);

}  // namespace gdisc
