#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gdisc/errors.hpp"
#include "gdisc/measurement_designer.hpp"
#include "gdisc/parallel.hpp"

namespace gdisc {

namespace {

using linalg::symmetrize;

Matrix generator(int n, const double* gen) {
    Matrix k = Matrix::Zero(2 * n, 2 * n);
    const double* x = gen;
    const double* y = gen + n * (n - 1) / 2;
    for (int j = 0; j < n; ++j) {
        for (int l = j; l < n; ++l) {
            const double yv = *y++;
            const double xv = l > j ? *x++ : 0.0;
            Eigen::Matrix2d blk;
            blk << xv, yv, -yv, xv;
            k.block<2, 2>(2 * j, 2 * l) = blk;
            if (l > j) k.block<2, 2>(2 * l, 2 * j) = -blk.transpose();
        }
    }
    return k;
}

double logdet_llt(const Matrix& m, bool& ok) {
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success) {
        ok = false;
        return 0.0;
    }
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

// Outcome divergences are evaluated in the eigenbasis of the seed, where
// Z = diag(z, 1/z) is added exactly; forming V + O Z O^T first would lose
// the small eigenvalue to rounding once |log z| is large.
class Objective {
public:
    Objective(const GaussianState& rho, const GaussianState& sigma, double alpha,
              const OptimizerOptions& opts, double displacement)
        : n_(rho.modes()),
          vr_(rho.cov().mat()),
          vs_(sigma.cov().mat()),
          delta_(rho.mean() - sigma.mean()),
          alpha_(alpha),
          box_(opts.log_z_box),
          displacement_(displacement) {}

    int dim() const { return n_ + n_ * n_; }

    std::vector<double> log_z(const Vector& p) const {
        std::vector<double> lz(n_);
        for (int j = 0; j < n_; ++j) lz[j] = box_ * std::tanh(p(j) / box_);
        return lz;
    }

    Matrix rotation(const Vector& p) const {
        return linalg::expm_antisymmetric(generator(n_, p.data() + n_));
    }

    double operator()(const Vector& p) const {
        const std::vector<double> lz = log_z(p);
        const Matrix o = rotation(p);
        Vector z(2 * n_);
        for (int j = 0; j < n_; ++j) {
            z(2 * j) = std::exp(lz[j]);
            z(2 * j + 1) = std::exp(-lz[j]);
        }
        const Matrix vr = symmetrize(o.transpose() * vr_ * o);
        const Matrix vs = symmetrize(o.transpose() * vs_ * o);
        const Matrix a = 0.5 * (Matrix(vr) + Matrix(z.asDiagonal()));
        const Matrix b = 0.5 * (Matrix(vs) + Matrix(z.asDiagonal()));
        const Matrix b_minus_a = 0.5 * symmetrize(vs - vr);
        bool ok = true;
        const double lda = logdet_llt(a, ok);
        const double ldb = logdet_llt(b, ok);
        if (!ok) return -std::numeric_limits<double>::infinity();

        if (std::isinf(alpha_)) return 0.5 * (ldb - lda) + displacement_;

        const Vector d = o.transpose() * delta_;
        if (alpha_ == 1.0) {
            Eigen::LLT<Matrix> llt(b);
            const double tr = -llt.solve(b_minus_a).trace();
            return 0.5 * (ldb - lda + tr + d.dot(llt.solve(d)));
        }
        const Matrix mix = b + (alpha_ - 1.0) * b_minus_a;
        Eigen::LLT<Matrix> llt(mix);
        if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
        const double ldm = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
        return 0.5 * alpha_ * d.dot(llt.solve(d)) -
               (ldm - (1.0 - alpha_) * lda - alpha_ * ldb) / (2.0 * (alpha_ - 1.0));
    }

private:
    int n_;
    Matrix vr_, vs_;
    Vector delta_;
    double alpha_;
    double box_;
    double displacement_;
};

Vector gradient(const Objective& f, const Vector& p) {
    constexpr double h = 1e-6;
    Vector g(p.size());
    Vector q = p;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        q(i) = p(i) + h;
        const double up = f(q);
        q(i) = p(i) - h;
        const double dn = f(q);
        q(i) = p(i);
        g(i) = (up - dn) / (2.0 * h);
    }
    return g;
}

struct LocalResult {
    Vector p;
    double value = -std::numeric_limits<double>::infinity();
};

// BFGS ascent with Armijo backtracking.
LocalResult bfgs_maximize(const Objective& f, Vector p, int max_iter) {
    const Eigen::Index n = p.size();
    double fx = f(p);
    Vector g = gradient(f, p);
    Matrix h = Matrix::Identity(n, n);
    int stalled = 0;
    for (int it = 0; it < max_iter; ++it) {
        if (g.lpNorm<Eigen::Infinity>() < 1e-10) break;
        Vector dir = h * g;
        if (dir.dot(g) <= 0) {
            h.setIdentity();
            dir = g;
        }
        const double slope = dir.dot(g);
        double step = 1.0;
        Vector trial;
        double ft = fx;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            trial = p + step * dir;
            ft = f(trial);
            if (std::isfinite(ft) && ft >= fx + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        const Vector gt = gradient(f, trial);
        const Vector s = trial - p;
        const Vector y = g - gt;  // gradient of -f
        const double sy = s.dot(y);
        if (sy > 1e-16) {
            const double rho = 1.0 / sy;
            const Matrix i_rsy = Matrix::Identity(n, n) - rho * s * y.transpose();
            h = i_rsy * h * i_rsy.transpose() + rho * s * s.transpose();
        }
        const double gain = ft - fx;
        p = trial;
        g = gt;
        fx = ft;
        stalled = gain < 1e-15 * (1.0 + std::abs(fx)) ? stalled + 1 : 0;
        if (stalled >= 3) break;
    }
    return {p, fx};
}

}  // namespace

Matrix seed_from_coordinates(const std::vector<double>& log_z, const std::vector<double>& gen) {
    const int n = static_cast<int>(log_z.size());
    if (static_cast<int>(gen.size()) != n * n) {
        throw DimensionError("generator needs N^2 coordinates");
    }
    const Matrix o = linalg::expm_antisymmetric(generator(n, gen.data()));
    Vector z(2 * n);
    for (int j = 0; j < n; ++j) {
        z(2 * j) = std::exp(log_z[j]);
        z(2 * j + 1) = std::exp(-log_z[j]);
    }
    return symmetrize(o * z.asDiagonal() * o.transpose());
}

SeedOptimum optimize_seed_numeric(const GaussianState& rho, const GaussianState& sigma,
                                  double alpha, const OptimizerOptions& opts,
                                  const Tolerances& tol) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("Renyi order must be >= 1");
    if (rho.modes() != sigma.modes()) throw DimensionError("mode counts differ");
    // Kullback-Leibler is finite for any pair; the other orders need V_sigma > V_rho.
    if (alpha != 1.0) require_ordered(rho.cov(), sigma.cov(), tol);
    const double disp = std::isinf(alpha) ? displacement_term(rho, sigma, tol) : 0.0;
    const Objective f(rho, sigma, alpha, opts, disp);
    const int dim = f.dim();
    const int n = rho.modes();
    const int starts = std::max(1, opts.starts);

    std::vector<Vector> init(starts, Vector::Zero(dim));
    for (int k = 1; k < starts; ++k) {
        std::mt19937_64 rng(opts.seed + 7919ULL * static_cast<std::uint64_t>(k));
        std::uniform_real_distribution<double> uz(-6.0, 6.0);
        std::uniform_real_distribution<double> ug(-M_PI, M_PI);
        for (int j = 0; j < n; ++j) init[k](j) = k == 1 ? 8.0 : k == 2 ? -8.0 : uz(rng);
        for (int i = n; i < dim; ++i) init[k](i) = k <= 2 ? 0.0 : ug(rng);
    }

    SeedOptimum out;
    LocalResult best;
    for (int round = 0; round < std::max(1, opts.max_rounds); ++round) {
        std::vector<LocalResult> results(starts);
        parallel_for(static_cast<std::size_t>(starts), opts.threads, [&](std::size_t k) {
            results[k] = bfgs_maximize(f, init[k], opts.max_iterations);
        });
        int arg = -1;
        for (int k = 0; k < starts; ++k) {
            if (std::isfinite(results[k].value) && (arg < 0 || results[k].value > results[arg].value)) {
                arg = k;
            }
        }
        out.rounds = round + 1;
        if (arg < 0) break;
        const double gain = results[arg].value - best.value;
        if (results[arg].value > best.value) {
            best = results[arg];
            out.best_start = round * starts + arg;
        }
        if (round > 0 && gain < opts.improvement_tol) {
            out.converged = true;
            break;
        }
        // Next round: restart from the incumbent and shrinking perturbations of it.
        std::mt19937_64 rng(opts.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(round + 1)));
        std::normal_distribution<double> nd(0.0, 0.5 / (round + 1));
        for (int k = 0; k < starts; ++k) {
            init[k] = best.p;
            if (k > 0) {
                for (int i = 0; i < dim; ++i) init[k](i) += nd(rng);
            }
        }
    }
    if (!std::isfinite(best.value)) throw Error("seed optimizer found no finite objective value");

    out.value = best.value;
    out.log_z = f.log_z(best.p);
    const Matrix o = f.rotation(best.p);
    Vector z(2 * n);
    for (int j = 0; j < n; ++j) {
        z(2 * j) = std::exp(out.log_z[j]);
        z(2 * j + 1) = std::exp(-out.log_z[j]);
    }
    out.seed = symmetrize(o * z.asDiagonal() * o.transpose());
    for (double lz : out.log_z) {
        if (std::abs(lz) >= opts.homodyne_threshold) out.homodyne_limit = true;
    }
    return out;
}

}  // namespace gdisc
