#include <cmath>
#include <ostream>

#include "gdisc/app.hpp"
#include "gdisc/errors.hpp"
#include "gdisc/parallel.hpp"

namespace gdisc {

std::vector<double> linspace(double lo, double hi, int steps) {
    if (steps < 1) throw ParseError("grid needs at least one step");
    std::vector<double> v(steps);
    for (int i = 0; i < steps; ++i) {
        v[i] = steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
    }
    return v;
}

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr double inf = std::numeric_limits<double>::infinity();

ScanRow scan_cell(double r, double m, double n, const Tolerances& tol) {
    ScanRow row;
    row.r = r;
    row.m = m;
    row.n = n;
    row.a = 2.0 * m + 1.0;
    row.b = 2.0 * n + 1.0;
    row.mu = std::exp(2.0 * r);
    row.gap = row.margin = row.band = nan;

    SingleModeBranch br;
    try {
        br = single_mode_branch(row.a, row.b, row.mu, tol);
    } catch (const DomainError&) {
        row.label = row.interval_label = "Undefined";
        row.dgmax = row.dmax = nan;
        return row;
    }
    if (br == SingleModeBranch::Infinite) {
        row.label = row.interval_label = "Infinite";
        row.dgmax = row.dmax = inf;
        return row;
    }

    const auto [lo, hi] = mu_interval(row.a, row.b);
    if (std::abs(row.mu - hi) <= tol.domain * hi || std::abs(row.mu - lo) <= tol.domain * lo) {
        row.interval_label = to_string(Case::AchievableLimit);
    } else {
        row.interval_label = to_string(br == SingleModeBranch::Interior ? Case::AchievableFinite
                                                                         : Case::Gap);
    }

    row.dgmax = single_mode_branch_value(row.a, row.b, row.mu, br, tol);
    row.dmax = single_mode_dmax(row.a, row.b, row.mu);
    row.gap = row.dmax - row.dgmax;

    Matrix vr = Matrix::Zero(2, 2);
    vr(0, 0) = row.a * row.mu;
    vr(1, 1) = row.a / row.mu;
    const Matrix vs = row.b * Matrix::Identity(2, 2);
    try {
        const Classification c = classify(vr, vs, nullptr, tol);
        row.label = to_string(c.kind);
        row.margin = c.margin;
        row.band = c.band;
    } catch (const DomainError&) {
        row.label = "Undefined";
    }
    return row;
}

}  // namespace

ScanResult run_scan(const ScanOptions& opts, const Tolerances& tol) {
    const std::vector<double> rs = linspace(opts.r_min, opts.r_max, opts.r_steps);
    const std::vector<double> ms = linspace(opts.m_min, opts.m_max, opts.m_steps);
    if (opts.n < 0 || opts.m_min < 0) throw ParseError("thermal photon numbers must be >= 0");
    ScanResult out;
    out.rows.resize(rs.size() * ms.size());
    parallel_for(out.rows.size(), opts.threads, [&](std::size_t k) {
        out.rows[k] = scan_cell(rs[k % rs.size()], ms[k / rs.size()], opts.n, tol);
    });
    for (const ScanRow& row : out.rows) {
        if (std::isnan(row.margin)) continue;
        if (std::abs(row.margin) <= row.band) {
            ++out.band_cells;
        } else if (row.label != row.interval_label) {
            ++out.disagreements;
        }
    }
    return out;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
    os << "r,m,n,a,b,mu,case,dgmax,dmax,gap,margin,interval_case\n";
    for (const ScanRow& r : rows) {
        os << format_real(r.r) << ',' << format_real(r.m) << ',' << format_real(r.n) << ','
           << format_real(r.a) << ',' << format_real(r.b) << ',' << format_real(r.mu) << ','
           << r.label << ',' << format_real(r.dgmax) << ',' << format_real(r.dmax) << ','
           << format_real(r.gap) << ',' << format_real(r.margin) << ',' << r.interval_label
           << '\n';
    }
}

nlohmann::json scan_to_json(const std::vector<ScanRow>& rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const ScanRow& r : rows) {
        j.push_back({{"r", json_real(r.r)},
                     {"m", json_real(r.m)},
                     {"n", json_real(r.n)},
                     {"a", json_real(r.a)},
                     {"b", json_real(r.b)},
                     {"mu", json_real(r.mu)},
                     {"case", r.label},
                     {"dgmax", json_real(r.dgmax)},
                     {"dmax", json_real(r.dmax)},
                     {"gap", json_real(r.gap)},
                     {"margin", json_real(r.margin)},
                     {"interval_case", r.interval_label}});
    }
    return j;
}

}  // namespace gdisc
