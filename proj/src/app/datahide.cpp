#include <cmath>
#include <ostream>

#include "gdisc/app.hpp"
#include "gdisc/errors.hpp"

namespace gdisc {

std::vector<DatahideRow> run_datahide(const std::vector<double>& eps, const std::vector<double>& kappa,
                                      std::optional<double> alpha, const OptimizerOptions& opts,
                                      const Tolerances& tol) {
    std::vector<DatahideRow> rows;
    for (double k : kappa) {
        for (double e : eps) {
            DatahideRow row;
            row.params = {e, k};
            if (!(e > 0.0 && e < 1.0)) {
                row.flag = "epsilon_out_of_range";
            } else if (k == 1.0) {
                // rho = sigma: both divergences vanish.
                row.flag = "identical_states";
                DataHidingReport rep;
                rep.a = rep.b = 1.0 + e;
                rep.mu = 1.0;
                rep.lead_dgmax = 0.0;
                rep.lead_dmax = -e / 4.0;
                rep.rel_dev_dgmax = rep.rel_dev_dmax = std::numeric_limits<double>::quiet_NaN();
                row.report = rep;
            } else if (!(k > 1.0)) {
                row.flag = "unordered";
            } else {
                row.report = data_hiding_family(row.params, false, opts, tol);
                if (alpha) {
                    row.alpha = *alpha;
                    row.measured_renyi = optimize_seed_numeric(data_hiding_rho(row.params),
                                                               data_hiding_sigma(row.params),
                                                               *alpha, opts, tol)
                                             .value;
                }
            }
            rows.push_back(row);
        }
    }
    return rows;
}

void write_datahide_csv(std::ostream& os, const std::vector<DatahideRow>& rows) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    os << "epsilon,kappa,a,b,mu,dgmax,dmax,gap,lead_dgmax,lead_dmax,rel_dev_dgmax,rel_dev_dmax,"
          "alpha,measured_renyi,flag\n";
    for (const DatahideRow& row : rows) {
        os << format_real(row.params.epsilon) << ',' << format_real(row.params.kappa) << ',';
        if (row.report) {
            const DataHidingReport& r = *row.report;
            os << format_real(r.a) << ',' << format_real(r.b) << ',' << format_real(r.mu) << ','
               << r.dgmax.to_string() << ',' << r.dmax.to_string() << ',' << format_real(r.gap)
               << ',' << format_real(r.lead_dgmax) << ',' << format_real(r.lead_dmax) << ','
               << format_real(r.rel_dev_dgmax) << ',' << format_real(r.rel_dev_dmax) << ',';
        } else {
            for (int i = 0; i < 10; ++i) os << format_real(nan) << ',';
        }
        os << (row.alpha > 0 ? format_real(row.alpha) : format_real(nan)) << ','
           << format_real(row.measured_renyi.value_or(nan)) << ',' << row.flag << '\n';
    }
}

nlohmann::json datahide_to_json(const std::vector<DatahideRow>& rows) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    nlohmann::json j = nlohmann::json::array();
    for (const DatahideRow& row : rows) {
        nlohmann::json o{{"epsilon", json_real(row.params.epsilon)},
                         {"kappa", json_real(row.params.kappa)}};
        const std::optional<DataHidingReport>& r = row.report;
        o["a"] = json_real(r ? r->a : nan);
        o["b"] = json_real(r ? r->b : nan);
        o["mu"] = json_real(r ? r->mu : nan);
        o["dgmax"] = json_real(r ? r->dgmax.value() : nan);
        o["dmax"] = json_real(r ? r->dmax.value() : nan);
        o["gap"] = json_real(r ? r->gap : nan);
        o["lead_dgmax"] = json_real(r ? r->lead_dgmax : nan);
        o["lead_dmax"] = json_real(r ? r->lead_dmax : nan);
        o["rel_dev_dgmax"] = json_real(r ? r->rel_dev_dgmax : nan);
        o["rel_dev_dmax"] = json_real(r ? r->rel_dev_dmax : nan);
        o["alpha"] = json_real(row.alpha > 0 ? row.alpha : nan);
        o["measured_renyi"] = json_real(row.measured_renyi.value_or(nan));
        o["flag"] = row.flag;
        j.push_back(std::move(o));
    }
    return j;
}

}  // namespace gdisc
