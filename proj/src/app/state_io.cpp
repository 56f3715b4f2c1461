#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "gdisc/app.hpp"
#include "gdisc/errors.hpp"

namespace gdisc {

using nlohmann::json;

namespace {

double number_at(const json& v, const std::string& where) {
    if (!v.is_number()) throw ParseError(where + " is not a number (got " + v.dump() + ")");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ParseError(where + " is not finite");
    return x;
}

Matrix parse_cov(const json& c, int dim) {
    if (!c.is_array()) throw ParseError("\"cov\" must be an array");
    Matrix m(dim, dim);
    if (!c.empty() && c.front().is_array()) {
        if (static_cast<int>(c.size()) != dim) {
            throw ParseError("\"cov\" has " + std::to_string(c.size()) + " rows, expected " +
                             std::to_string(dim));
        }
        for (int i = 0; i < dim; ++i) {
            const json& row = c[i];
            if (!row.is_array()) throw ParseError("cov row " + std::to_string(i) + " is not an array");
            if (static_cast<int>(row.size()) != dim) {
                throw ParseError("cov row " + std::to_string(i) + " has " +
                                 std::to_string(row.size()) + " entries, expected " +
                                 std::to_string(dim));
            }
            for (int j = 0; j < dim; ++j) {
                m(i, j) = number_at(row[j], "cov[" + std::to_string(i) + "][" + std::to_string(j) + "]");
            }
        }
        return m;
    }
    if (static_cast<int>(c.size()) != dim * dim) {
        throw ParseError("flat \"cov\" has " + std::to_string(c.size()) + " entries, expected " +
                         std::to_string(dim * dim) + " (row-major " + std::to_string(dim) + "x" +
                         std::to_string(dim) + ")");
    }
    for (int k = 0; k < dim * dim; ++k) {
        m(k / dim, k % dim) = number_at(c[k], "cov entry " + std::to_string(k) + " (row " +
                                                  std::to_string(k / dim) + ", column " +
                                                  std::to_string(k % dim) + ")");
    }
    return m;
}

}  // namespace

GaussianState parse_state(const std::string& text, const Tolerances& tol) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("state file must hold a JSON object");
    if (!j.contains("version") || j["version"] != "v1") {
        throw ParseError("state file needs \"version\": \"v1\"");
    }
    if (!j.contains("modes") || !j["modes"].is_number_integer() || j["modes"].get<long>() < 1) {
        throw ParseError("\"modes\" must be a positive integer");
    }
    const int n = j["modes"].get<int>();
    const int dim = 2 * n;
    if (!j.contains("mean") || !j["mean"].is_array()) throw ParseError("\"mean\" must be an array");
    const json& mj = j["mean"];
    if (static_cast<int>(mj.size()) != dim) {
        throw ParseError("\"mean\" has " + std::to_string(mj.size()) + " entries, expected " +
                         std::to_string(dim));
    }
    Vector mean(dim);
    for (int i = 0; i < dim; ++i) mean(i) = number_at(mj[i], "mean[" + std::to_string(i) + "]");
    if (!j.contains("cov")) throw ParseError("missing \"cov\"");
    const Matrix cov = parse_cov(j["cov"], dim);

    const double scale = std::max(1e-300, cov.cwiseAbs().maxCoeff());
    for (int r = 0; r < dim; ++r) {
        for (int c = r + 1; c < dim; ++c) {
            if (std::abs(cov(r, c) - cov(c, r)) > tol.symmetry * scale) {
                throw ParseError("cov is not symmetric: [" + std::to_string(r) + "][" +
                                 std::to_string(c) + "] = " + format_real(cov(r, c)) + " but [" +
                                 std::to_string(c) + "][" + std::to_string(r) + "] = " +
                                 format_real(cov(c, r)));
            }
        }
    }
    return GaussianState(mean, cov, tol);
}

GaussianState load_state(const std::string& path, const Tolerances& tol) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_state(ss.str(), tol);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string state_to_json(const GaussianState& s) {
    json j;
    j["version"] = "v1";
    j["modes"] = s.modes();
    j["mean"] = std::vector<double>(s.mean().data(), s.mean().data() + s.mean().size());
    json rows = json::array();
    const Matrix& v = s.cov();
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < v.cols(); ++k) row.push_back(v(i, k));
        rows.push_back(row);
    }
    j["cov"] = rows;
    return j.dump(2);
}

void apply_tol_override(Tolerances& tol, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw ParseError("tolerance override must be name=value: " + spec);
    const std::string name = spec.substr(0, eq);
    double value = 0.0;
    try {
        std::size_t used = 0;
        value = std::stod(spec.substr(eq + 1), &used);
        if (used != spec.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw ParseError("bad tolerance value in " + spec);
    }
    if (!(value >= 0.0)) throw ParseError("tolerance must be non-negative: " + spec);
    struct Field {
        const char* name;
        double Tolerances::*ptr;
    };
    static const Field fields[] = {
        {"psd", &Tolerances::psd},
        {"reconstruct", &Tolerances::reconstruct},
        {"symmetry", &Tolerances::symmetry},
        {"domain", &Tolerances::domain},
        {"purity", &Tolerances::purity},
        {"class_rel", &Tolerances::class_rel},
        {"block", &Tolerances::block},
        {"condition_warn", &Tolerances::condition_warn},
        {"g_argument", &Tolerances::g_argument},
        {"zopt_argument", &Tolerances::zopt_argument},
    };
    for (const auto& f : fields) {
        if (name == f.name) {
            tol.*f.ptr = value;
            return;
        }
    }
    throw ParseError("unknown tolerance '" + name + "'");
}

json json_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

}  // namespace gdisc
