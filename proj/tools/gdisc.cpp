#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>

#include "gdisc/app.hpp"
#include "gdisc/errors.hpp"
#include "gdisc/parallel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitDomain = 2;

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw gdisc::ParseError(std::string("bad number '") + item + "' in " + what);
        }
    }
    if (out.empty()) throw gdisc::ParseError(std::string(what) + " is empty");
    return out;
}

// Output sink: --out path or stdout.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw gdisc::ParseError("cannot write " + path);
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Max-relative entropy and Gaussian-measured max-relative entropy of Gaussian states"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format;  // per-command default: report json, scan/datahide csv, certify text
    std::vector<std::string> tol_overrides;
    double alpha = std::numeric_limits<double>::quiet_NaN();
    int cutoff = 80;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "Write output to this file instead of stdout");
        sub->add_option("--format", format, "Output format (default: json for report, csv for scan and datahide, text for certify)")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--tol-override", tol_overrides,
                        "name=value, repeatable (psd, reconstruct, symmetry, domain, purity, "
                        "class_rel, block, condition_warn, g_argument, zopt_argument)");
        sub->add_option("--seed", seed, "Seed for randomized starts and corpora");
    };

    auto* report = app.add_subcommand("report", "Divergence report for a pair of state files");
    std::string rho_path, sigma_path;
    report->add_option("rho", rho_path, "State file of rho (JSON, version v1)")->required();
    report->add_option("sigma", sigma_path, "State file of sigma")->required();
    report->add_option("--alpha", alpha, "Also optimize the measured Renyi divergence of this order");
    add_common(report);

    gdisc::ScanOptions scan_opts;
    auto* scan = app.add_subcommand(
        "scan",
        "Single-mode phase diagram over (r, m) at fixed n.\n"
        "CSV columns: r,m,n,a,b,mu,case,dgmax,dmax,gap,margin,interval_case\n"
        "(a = 2m+1, b = 2n+1, mu = e^{2r}; case from the general classifier,\n"
        "interval_case from the closed-form mu interval)");
    scan->add_option("--n", scan_opts.n, "Thermal photon number of sigma")->required();
    scan->add_option("--r-min", scan_opts.r_min);
    scan->add_option("--r-max", scan_opts.r_max);
    scan->add_option("--r-steps", scan_opts.r_steps);
    scan->add_option("--m-min", scan_opts.m_min);
    scan->add_option("--m-max", scan_opts.m_max);
    scan->add_option("--m-steps", scan_opts.m_steps);
    add_common(scan);

    std::string eps_list = "1e-2,1e-3,1e-4,1e-5";
    std::string kappa_list = "100";
    auto* datahide = app.add_subcommand(
        "datahide",
        "Data-hiding family a = 1+eps, b = 1+kappa eps, mu = 1+(kappa-1) eps (1-eps).\n"
        "CSV columns: epsilon,kappa,a,b,mu,dgmax,dmax,gap,lead_dgmax,lead_dmax,\n"
        "rel_dev_dgmax,rel_dev_dmax,alpha,measured_renyi,flag");
    datahide->add_option("--eps", eps_list, "Comma-separated epsilon values");
    datahide->add_option("--kappa", kappa_list, "Comma-separated kappa values");
    datahide->add_option("--alpha", alpha, "Add the measured Renyi divergence of this order (1 = KL)");
    add_common(datahide);

    std::string convergence_out;
    auto* certify = app.add_subcommand("certify", "Truncated Fock-space oracle checks");
    certify->add_option("--cutoff", cutoff, "Fock cutoff")->check(CLI::Range(2, 2000));
    certify->add_option("--convergence-out", convergence_out,
                        "Also write the squeezed-vacuum (mu = e^4) truncation table as CSV");
    add_common(certify);

    CLI11_PARSE(app, argc, argv);

    gdisc::Tolerances tol;
    gdisc::OptimizerOptions oopts;
    oopts.threads = gdisc::default_thread_count();
    try {
        for (const auto& s : tol_overrides) gdisc::apply_tol_override(tol, s);
        oopts.seed = seed;

        if (*report) {
            const gdisc::GaussianState rho = gdisc::load_state(rho_path, tol);
            const gdisc::GaussianState sigma = gdisc::load_state(sigma_path, tol);
            gdisc::DivergenceReport rep;
            try {
                rep = gdisc::divergence_report(rho, sigma, oopts, tol);
            } catch (const gdisc::DomainError& e) {
                nlohmann::json j;
                j["status"] = "domain_violation";
                j["message"] = e.what();
                j["offending_value"] = gdisc::json_real(e.offending_value());
                Sink sink(out_path);
                sink.os() << j.dump(2) << '\n';
                return kExitDomain;
            }
            nlohmann::json j = gdisc::report_to_json(rep);
            if (!std::isnan(alpha)) {
                j["alpha"] = gdisc::json_real(alpha);
                j["measured_renyi"] =
                    gdisc::json_real(gdisc::optimize_seed_numeric(rho, sigma, alpha, oopts, tol).value);
            }
            Sink sink(out_path);
            if (format == "csv") {
                gdisc::write_report_csv(sink.os(), rep);
                if (j.contains("measured_renyi")) {
                    sink.os() << "alpha," << gdisc::format_real(alpha) << "\nmeasured_renyi,"
                              << j["measured_renyi"].dump() << '\n';
                }
            } else {
                sink.os() << j.dump(2) << '\n';
            }
        } else if (*scan) {
            scan_opts.threads = gdisc::default_thread_count();
            const gdisc::ScanResult res = gdisc::run_scan(scan_opts, tol);
            Sink sink(out_path);
            if (format == "json") {
                sink.os() << gdisc::scan_to_json(res.rows).dump(2) << '\n';
            } else {
                gdisc::write_scan_csv(sink.os(), res.rows);
            }
            std::cerr << "scan: " << res.rows.size() << " cells, " << res.band_cells
                      << " in the boundary band, " << res.disagreements
                      << " classifier/interval disagreements outside it\n";
        } else if (*datahide) {
            std::optional<double> a;
            if (!std::isnan(alpha)) a = alpha;
            const auto rows = gdisc::run_datahide(parse_list(eps_list, "--eps"),
                                                  parse_list(kappa_list, "--kappa"), a, oopts, tol);
            Sink sink(out_path);
            if (format == "json") {
                sink.os() << gdisc::datahide_to_json(rows).dump(2) << '\n';
            } else {
                gdisc::write_datahide_csv(sink.os(), rows);
            }
        } else if (*certify) {
            gdisc::CertifyOptions copts;
            copts.seed = seed;
            copts.cutoff = cutoff;
            const gdisc::CertifyReport rep = gdisc::run_certify(copts, tol);
            Sink sink(out_path);
            if (format == "json") {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& c : rep.checks) {
                    j.push_back({{"name", c.name},
                                 {"cases", c.cases},
                                 {"skipped", c.skipped},
                                 {"max_deviation", gdisc::json_real(c.max_deviation)},
                                 {"tolerance", c.tolerance},
                                 {"passed", c.passed},
                                 {"hint", c.hint}});
                }
                sink.os() << j.dump(2) << '\n';
            } else if (format == "csv") {
                sink.os() << "name,cases,skipped,max_deviation,tolerance,passed\n";
                for (const auto& c : rep.checks) {
                    sink.os() << c.name << ',' << c.cases << ',' << c.skipped << ','
                              << gdisc::format_real(c.max_deviation) << ','
                              << gdisc::format_real(c.tolerance) << ',' << (c.passed ? "true" : "false")
                              << '\n';
                }
            } else {
                gdisc::write_certify_text(sink.os(), rep);
            }
            if (!convergence_out.empty()) {
                std::ofstream cf(convergence_out);
                if (!cf) throw gdisc::ParseError("cannot write " + convergence_out);
                gdisc::write_convergence_csv(
                    cf, gdisc::squeezed_vacuum_convergence({50, 100, 150, 200, 300, 400, 500, 600, 700, 800}));
            }
            return rep.passed() ? kExitOk : kExitInput;
        }
    } catch (const gdisc::DomainError& e) {
        std::cerr << "domain violation: " << e.what() << '\n';
        return kExitDomain;
    } catch (const gdisc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}
