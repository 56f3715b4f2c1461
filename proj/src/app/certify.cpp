#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "gdisc/app.hpp"
#include "gdisc/errors.hpp"

namespace gdisc {

bool CertifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CertifyCheck& c) { return c.passed; });
}

std::vector<CorpusPoint> oracle_corpus(std::uint64_t seed, int points) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ab(1.0, 5.0);
    std::uniform_real_distribution<double> lmu(-1.0, 1.0);
    std::vector<CorpusPoint> out;
    while (static_cast<int>(out.size()) < points) {
        const double a = ab(rng);
        const double b = ab(rng);
        const double mu = std::exp(lmu(rng));
        if (std::min(b - a * mu, b - a / mu) >= 0.1) out.push_back({a, b, mu});
    }
    return out;
}

namespace {

struct Tracker {
    CertifyCheck c;
    Tracker(std::string name, double tolerance) {
        c.name = std::move(name);
        c.tolerance = tolerance;
    }
    void add(double dev) {
        c.max_deviation = c.cases == 0 ? dev : std::max(c.max_deviation, dev);
        ++c.cases;
    }
    CertifyCheck finish(const std::string& hint) {
        c.passed = c.cases > 0 && c.max_deviation <= c.tolerance;
        if (!c.passed) c.hint = hint;
        return c;
    }
};

Matrix diag2(double x, double y) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = x;
    m(1, 1) = y;
    return m;
}

}  // namespace

CertifyReport run_certify(const CertifyOptions& opts, const Tolerances& tol) {
    if (opts.cutoff < 2) throw ParseError("cutoff must be at least 2");
    const std::string hint = "truncation error dominates at cutoff " +
                             std::to_string(opts.cutoff) + "; rerun with a larger --cutoff (80 or more)";
    FockOptions fo;
    fo.max_trace_deficit = std::numeric_limits<double>::infinity();

    Tracker deficit("trace_deficit", 1e-8);
    Tracker eq7("dmax_vs_lambda1", 1e-4);
    Tracker routes("dmax_routes_agree", 1e-9);
    Tracker worked("worked_points", 1e-5);
    Tracker below("measured_not_above_lambda1", 1e-6);
    Tracker case1("case1_seed_attains_lambda1", 1e-4);
    Tracker overlap("top_eigenvector_overlap", 1e-6);

    auto run_point = [&](double a, double b, double mu, Tracker* target, double expected) {
        const FockOperator rho = squeezed_thermal_fock(a, mu, opts.cutoff, fo);
        const FockOperator sigma = squeezed_thermal_fock(b, 1.0, opts.cutoff, fo);
        deficit.add(std::max(rho.trace_deficit, sigma.trace_deficit));
        const LikelihoodSpectrum spec = likelihood_top_eig(rho, sigma);
        const double ln1 = std::log(spec.lambda1);
        const Matrix vr = diag2(a * mu, a / mu);
        const Matrix vs = b * Matrix::Identity(2, 2);
        const double formula = dmax_zero_mean(vr, vs, nullptr, tol);
        target->add(std::abs(ln1 - (std::isnan(expected) ? formula : expected)));
        const Divergence arc = dmax_arcoth_form(vr, vs, tol);
        if (arc.is_finite()) routes.add(std::abs(arc.value() - formula));

        const Vector zero = Vector::Zero(2);
        below.add(std::log(projector_ratio(rho, sigma, Matrix::Identity(2, 2), zero)) - ln1);
        const Classification cls = classify(vr, vs, nullptr, tol);
        if (cls.kind == Case::AchievableFinite && cls.gamma_opt) {
            const Matrix& g = cls.gamma_opt->mat();
            // Strongly squeezed seeds do not fit in the cutoff themselves.
            const double seed_deficit =
                1.0 - pure_gaussian_vector(g, zero, opts.cutoff).squaredNorm();
            if (seed_deficit > 1e-10) {
                ++case1.c.skipped;
                ++overlap.c.skipped;
                return;
            }
            const double lr = std::log(projector_ratio(rho, sigma, g, zero));
            below.add(lr - ln1);
            case1.add(std::abs(lr - ln1));
            Matrix rot(2, 2);
            rot << std::cos(0.2), -std::sin(0.2), std::sin(0.2), std::cos(0.2);
            const OverlapCheck oc = overlap_check(rho, sigma, rot * g * rot.transpose(), zero);
            if (!oc.skipped) overlap.add(std::max(0.0, oc.bound - oc.overlap));
        }
    };

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const CorpusPoint& p : oracle_corpus(opts.seed, opts.points)) run_point(p.a, p.b, p.mu, &eq7, nan);
    run_point(1.0, 3.0, 1.0, &worked, std::log(2.0));
    run_point(3.0, 5.0, 1.0, &worked, std::log(1.5));

    CertifyReport r;
    for (Tracker* t : {&deficit, &eq7, &routes, &worked, &below, &case1, &overlap}) {
        r.checks.push_back(t->finish(hint));
    }
    return r;
}

void write_certify_text(std::ostream& os, const CertifyReport& r) {
    for (const CertifyCheck& c : r.checks) {
        std::ostringstream t;
        t << c.tolerance;
        os << std::left << std::setw(28) << c.name << " cases=" << std::setw(4) << c.cases
           << " skipped=" << std::setw(3) << c.skipped << " max_dev=" << std::setw(24)
           << format_real(c.max_deviation) << " tol=" << std::setw(6) << t.str()
           << (c.passed ? " PASS" : " FAIL");
        if (!c.hint.empty()) os << "  hint: " << c.hint;
        os << '\n';
    }
    os << (r.passed() ? "certify: PASS\n" : "certify: FAIL\n");
}

std::vector<ConvergenceRow> squeezed_vacuum_convergence(const std::vector<int>& cutoffs) {
    FockOptions fo;
    fo.max_trace_deficit = std::numeric_limits<double>::infinity();
    const double mu = std::exp(4.0);
    return convergence_check(
        [&](int n) { return squeezed_thermal_fock(1.0, mu, n, fo); },
        [](const FockOperator& op) {
            const ComplexMatrix a = annihilation(op.cutoff);
            const ComplexMatrix q = (a + a.adjoint()) / std::sqrt(2.0);
            return 2.0 * (op.matrix * q * q).trace().real();
        },
        cutoffs);
}

}  // namespace gdisc
