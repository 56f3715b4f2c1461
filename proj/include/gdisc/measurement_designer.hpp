#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gdisc/divergence.hpp"
#include "gdisc/divergence_engine.hpp"
#include "gdisc/linalg.hpp"
#include "gdisc/symplectic_core.hpp"

namespace gdisc {

/// f_s(V_psi) = V_s - G(V_s Omega) V_s (V_s + V_psi)^{-1} V_s G(Omega V_s).
PhaseSpaceMatrix f_sigma(const Matrix& v_sigma, const Matrix& v_psi, Warnings* warn = nullptr,
                         const Tolerances& tol = default_tolerances());

/// gamma_opt = -V_s - G(V_s Omega) V_s (V_zeta - V_s)^{-1} V_s G(Omega V_s).
/// Returned raw (possibly unphysical). DomainError when V_zeta - V_s is singular.
Matrix gamma_opt(const Matrix& v_rho, const Matrix& v_sigma, Warnings* warn = nullptr,
                 const Tolerances& tol = default_tolerances());

enum class Case { AchievableFinite, AchievableLimit, Gap };
const char* to_string(Case c);

struct Classification {
    Case kind = Case::Gap;
    std::optional<PhaseSpaceMatrix> gamma_opt;  // AchievableFinite only
    double margin = 0.0;                        // min eig(V_sigma - V_zeta)
    double band = 0.0;                          // tol.class_rel * ||V_sigma||
    std::optional<double> gap_value;            // filled by divergence_report
    // Bona fide status of the raw gamma_opt agrees with the sign of margin.
    // Not evaluated inside the band (gamma_opt is singular there).
    bool prop1_consistent = true;
};

Classification classify(const Matrix& v_rho, const Matrix& v_sigma, Warnings* warn = nullptr,
                        const Tolerances& tol = default_tolerances());

struct StandardFormParams {
    double a = 1.0;
    double b = 1.0;
    double mu = 1.0;
    Matrix reducing_symplectic;  // T with T^T V_rho T = a diag(mu, 1/mu), T^T V_sigma T = b I
};

/// Single-mode reduction. mu >= 1 by convention (the larger rotated entry
/// goes to the position quadrature). The pair need not be ordered.
StandardFormParams standard_form_reduce(const Matrix& v_rho, const Matrix& v_sigma,
                                        const Tolerances& tol = default_tolerances());

std::pair<double, double> mu_interval(double a, double b);

/// Optimal seed squeezing for mu strictly inside mu_interval(a, b).
double single_mode_zopt(double a, double b, double mu, const Tolerances& tol = default_tolerances());

/// Measured value of gamma = diag(z, 1/z) on the standard-form pair:
/// 1/2 ln[mu (b + z)(b z + 1) / ((a z + mu)(a mu + z))]. z = +inf gives the
/// position-homodyne limit 1/2 ln(b mu / a).
double single_mode_objective(double a, double b, double mu, double z);

enum class SingleModeBranch { Interior, HomodyneQ, HomodyneP, Infinite };
SingleModeBranch single_mode_branch(double a, double b, double mu,
                                    const Tolerances& tol = default_tolerances());

/// Value of one branch's formula, regardless of whether mu lies in it.
/// Interior at the interval end points uses the homodyne limit of z_opt.
double single_mode_branch_value(double a, double b, double mu, SingleModeBranch branch,
                                const Tolerances& tol = default_tolerances());

/// Closed-form Gaussian measured D_max of the standard-form pair.
/// DomainError at mu = b/a or mu = a/b, where V_sigma - V_rho is singular.
Divergence single_mode_gdmax(double a, double b, double mu,
                             const Tolerances& tol = default_tolerances());

/// Closed-form unrestricted D_max of the standard-form pair,
///   ln(b^2 - 1) - ln( sqrt(d1 d2) + sqrt((a b mu - 1)(a b - mu)/mu) ),
/// d1 = b - a mu, d2 = b - a/mu. Callers that know d1 or d2 more accurately
/// than the subtraction can pass them in.
double single_mode_dmax(double a, double b, double mu, std::optional<double> d1 = std::nullopt,
                        std::optional<double> d2 = std::nullopt);

struct OptimizerOptions {
    int starts = 16;
    int max_rounds = 4;
    int max_iterations = 500;
    double improvement_tol = 1e-12;
    double log_z_box = 30.0;
    double homodyne_threshold = 15.0;  // |log z| flagged as a homodyne limit
    std::uint64_t seed = 0x5eed;
    unsigned threads = 1;
};

struct SeedOptimum {
    double value = 0.0;  // includes means (displacement term for alpha = inf)
    Matrix seed;         // pure seed covariance
    std::vector<double> log_z;
    bool homodyne_limit = false;
    bool converged = false;
    int rounds = 0;
    int best_start = 0;
};

/// Multi-start quasi-Newton over pure seeds gamma = O Z O^T. alpha = +inf
/// maximizes the measured D_max, finite alpha >= 1 the classical Renyi
/// divergence of the outcome distributions. The result is a lower bound on
/// the supremum. DomainError unless V_sigma > V_rho (alpha = 1 excepted).
SeedOptimum optimize_seed_numeric(const GaussianState& rho, const GaussianState& sigma,
                                  double alpha, const OptimizerOptions& opts = {},
                                  const Tolerances& tol = default_tolerances());

/// Pure seed covariance from optimizer coordinates: log_z (N values) and the
/// N^2 generator entries (antisymmetric x_jk, j<k, then symmetric y_jk, j<=k).
Matrix seed_from_coordinates(const std::vector<double>& log_z, const std::vector<double>& gen);

enum class GdmaxMethod { SingleMode, BlockProduct, Numeric };
const char* to_string(GdmaxMethod m);

struct GdmaxResult {
    Divergence value;          // including the displacement term
    Divergence zero_mean;
    double displacement = 0.0;
    GdmaxMethod method = GdmaxMethod::SingleMode;
    std::optional<Matrix> seed;  // optimal seed when attained
    bool homodyne_limit = false;
    bool lower_bound = false;    // numeric fallback
    std::vector<double> block_values;
};

/// Symplectic T making both T^T V_rho T and T^T V_sigma T block diagonal
/// (one 2x2 block per mode), when detected. Best effort.
std::optional<Matrix> detect_product_frame(const Matrix& v_rho, const Matrix& v_sigma,
                                           const Tolerances& tol = default_tolerances());

GdmaxResult gdmax(const GaussianState& rho, const GaussianState& sigma,
                  const OptimizerOptions& opts = {}, Warnings* warn = nullptr,
                  const Tolerances& tol = default_tolerances());

struct DataHidingParams {
    double epsilon = 1e-4;
    double kappa = 100.0;
};

struct DataHidingReport {
    double a = 0.0, b = 0.0, mu = 0.0;
    Divergence dgmax;
    Divergence dmax;
    double gap = 0.0;
    double lead_dgmax = 0.0;  // (kappa - 1) epsilon
    double lead_dmax = 0.0;   // ln(kappa)/2 - kappa epsilon/4
    double rel_dev_dgmax = 0.0;
    double rel_dev_dmax = 0.0;
    std::optional<double> measured_kl;  // optimizer at alpha = 1
};

/// a = 1 + eps, b = 1 + kappa eps, mu = 1 + (kappa - 1) eps (1 - eps).
/// DomainError unless 0 < eps < 1 and kappa > 1.
DataHidingReport data_hiding_family(const DataHidingParams& p, bool with_kl = false,
                                    const OptimizerOptions& opts = {},
                                    const Tolerances& tol = default_tolerances());

GaussianState data_hiding_rho(const DataHidingParams& p);
GaussianState data_hiding_sigma(const DataHidingParams& p);

struct DivergenceReport {
    int modes = 0;
    Classification classification;
    Divergence dmax;              // unrestricted, including displacement
    double dmax_zero_mean = 0.0;
    Divergence dmax_arcoth;       // second route, zero means
    double displacement = 0.0;
    GdmaxResult gdmax;
    std::optional<double> gap;    // dmax - gdmax when both finite
    Warnings warnings;
};

DivergenceReport divergence_report(const GaussianState& rho, const GaussianState& sigma,
                                   const OptimizerOptions& opts = {},
                                   const Tolerances& tol = default_tolerances());

}  // namespace gdisc
