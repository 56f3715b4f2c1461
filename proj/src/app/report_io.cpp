#include <ostream>

#include "gdisc/app.hpp"

namespace gdisc {

using nlohmann::json;

namespace {

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(json_real(m(i, k)));
        rows.push_back(row);
    }
    return rows;
}

json divergence_json(const Divergence& d) { return json_real(d.value()); }

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

json report_to_json(const DivergenceReport& r) {
    json j;
    j["status"] = "ok";
    j["modes"] = r.modes;
    j["case"] = to_string(r.classification.kind);
    j["margin"] = json_real(r.classification.margin);
    j["band"] = json_real(r.classification.band);
    j["prop1_consistent"] = r.classification.prop1_consistent;
    j["gamma_opt"] = r.classification.gamma_opt ? matrix_json(r.classification.gamma_opt->mat())
                                                : json(nullptr);
    j["dgmax"] = divergence_json(r.gdmax.value);
    j["dgmax_zero_mean"] = divergence_json(r.gdmax.zero_mean);
    j["dgmax_method"] = to_string(r.gdmax.method);
    j["dgmax_lower_bound"] = r.gdmax.lower_bound;
    j["homodyne_limit"] = r.gdmax.homodyne_limit;
    j["seed"] = r.gdmax.seed ? matrix_json(*r.gdmax.seed) : json(nullptr);
    j["dmax"] = divergence_json(r.dmax);
    j["dmax_zero_mean"] = json_real(r.dmax_zero_mean);
    j["dmax_arcoth_form"] = divergence_json(r.dmax_arcoth);
    j["displacement_term"] = json_real(r.displacement);
    j["gap"] = r.gap ? json_real(*r.gap) : json(nullptr);
    j["warnings"] = r.warnings.messages;
    return j;
}

void write_report_csv(std::ostream& os, const DivergenceReport& r) {
    const json j = report_to_json(r);
    static const char* keys[] = {"modes", "case", "margin", "band", "prop1_consistent", "dgmax",
                                 "dgmax_zero_mean", "dgmax_method", "dgmax_lower_bound",
                                 "homodyne_limit", "dmax", "dmax_zero_mean", "dmax_arcoth_form",
                                 "displacement_term", "gap"};
    os << "field,value\n";
    for (const char* k : keys) {
        os << k << ',' << (j[k].is_null() ? std::string() : cell(j[k])) << '\n';
    }
    for (const auto& w : r.warnings.messages) os << "warning,\"" << w << "\"\n";
}

}  // namespace gdisc
