#include "gdisc/divergence.hpp"

#include <cmath>
#include <cstdio>

namespace gdisc {

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string Divergence::to_string() const { return infinite_ ? "inf" : format_real(value_); }

}  // namespace gdisc
