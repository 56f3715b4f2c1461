#pragma once

#include <limits>
#include <string>

namespace gdisc {

/// A divergence value on the extended half-line: finite, or +infinity.
class Divergence {
public:
    Divergence() = default;  // finite zero
    static Divergence finite(double v) { return Divergence(v, false); }
    static Divergence infinite() { return Divergence(0.0, true); }

    bool is_finite() const { return !infinite_; }
    bool is_infinite() const { return infinite_; }

    /// The finite value, or +inf.
    double value() const { return infinite_ ? std::numeric_limits<double>::infinity() : value_; }

    /// 17 significant digits, or the literal token "inf".
    std::string to_string() const;

private:
    Divergence(double v, bool inf) : value_(v), infinite_(inf) {}
    double value_ = 0.0;
    bool infinite_ = false;
};

/// Same rendering rule as Divergence::to_string, for plain doubles
/// (+inf -> "inf", NaN -> "nan").
std::string format_real(double v);

}  // namespace gdisc
