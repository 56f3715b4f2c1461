#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gdisc/fock_oracle.hpp"
#include "gdisc/measurement_designer.hpp"

namespace gdisc {

// ---- state files -----------------------------------------------------------

/// {"version": "v1", "modes": N, "mean": [2N], "cov": [4N^2] or [[2N] x 2N]}.
/// Throws ParseError with row/column diagnostics, InvalidState when the
/// covariance is not bona fide.
GaussianState parse_state(const std::string& text, const Tolerances& tol = default_tolerances());
GaussianState load_state(const std::string& path, const Tolerances& tol = default_tolerances());
std::string state_to_json(const GaussianState& s);

/// "name=value" applied to the matching Tolerances field.
void apply_tol_override(Tolerances& tol, const std::string& spec);

/// Finite values as numbers, +inf as "inf", NaN as "nan".
nlohmann::json json_real(double v);

// ---- report ----------------------------------------------------------------

nlohmann::json report_to_json(const DivergenceReport& r);

/// Two-column "field,value" CSV of the same content.
void write_report_csv(std::ostream& os, const DivergenceReport& r);

// ---- scan ------------------------------------------------------------------

struct ScanOptions {
    double n = 0.5;  // thermal photons of sigma
    double r_min = -1.0, r_max = 1.0;
    int r_steps = 101;
    double m_min = 0.0, m_max = 2.0;
    int m_steps = 101;
    unsigned threads = 1;
};

struct ScanRow {
    double r = 0, m = 0, n = 0, a = 0, b = 0, mu = 0;
    std::string label;           // AchievableFinite|AchievableLimit|Gap|Infinite|Undefined
    std::string interval_label;  // the same from the closed-form interval alone
    double dgmax = 0, dmax = 0, gap = 0, margin = 0, band = 0;
};

struct ScanResult {
    std::vector<ScanRow> rows;  // outer loop over m, inner over r
    int disagreements = 0;      // outside the band
    int band_cells = 0;         // |margin| <= band
};

/// Grid of r, m values; with steps == 1 the range minimum is used.
std::vector<double> linspace(double lo, double hi, int steps);

ScanResult run_scan(const ScanOptions& opts, const Tolerances& tol = default_tolerances());

/// Columns: r,m,n,a,b,mu,case,dgmax,dmax,gap,margin,interval_case.
void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);

/// Array of row objects keyed by the CSV column names.
nlohmann::json scan_to_json(const std::vector<ScanRow>& rows);

// ---- data hiding -------------------------------------------------------------

struct DatahideRow {
    DataHidingParams params;
    std::optional<DataHidingReport> report;
    std::string flag;  // empty, "identical_states", "unordered" or "epsilon_out_of_range"
    double alpha = 0;  // 0 when no measured Renyi value was requested
    std::optional<double> measured_renyi;
};

std::vector<DatahideRow> run_datahide(const std::vector<double>& eps, const std::vector<double>& kappa,
                                      std::optional<double> alpha,
                                      const OptimizerOptions& opts = {},
                                      const Tolerances& tol = default_tolerances());

/// Columns: epsilon,kappa,a,b,mu,dgmax,dmax,gap,lead_dgmax,lead_dmax,
/// rel_dev_dgmax,rel_dev_dmax,alpha,measured_renyi,flag.
void write_datahide_csv(std::ostream& os, const std::vector<DatahideRow>& rows);

nlohmann::json datahide_to_json(const std::vector<DatahideRow>& rows);

// ---- oracle certification ------------------------------------------------------

struct CertifyOptions {
    std::uint64_t seed = 1;
    int cutoff = 80;
    int points = 50;
};

struct CertifyCheck {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    int cases = 0;
    int skipped = 0;  // seeds that do not fit in the cutoff
    bool passed = false;
    std::string hint;
};

struct CertifyReport {
    std::vector<CertifyCheck> checks;
    bool passed() const;
};

struct CorpusPoint {
    double a, b, mu;
};

/// Standard-form pairs with a, b in [1, 5], |ln mu| <= 1 and
/// min eig(V_sigma - V_rho) >= 0.1; deterministic in the seed.
std::vector<CorpusPoint> oracle_corpus(std::uint64_t seed, int points);

CertifyReport run_certify(const CertifyOptions& opts, const Tolerances& tol = default_tolerances());
void write_certify_text(std::ostream& os, const CertifyReport& r);

/// Truncation table of the squeezed vacuum mu = e^4 (value = position variance).
std::vector<ConvergenceRow> squeezed_vacuum_convergence(const std::vector<int>& cutoffs);

}  // namespace gdisc
