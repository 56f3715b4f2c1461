#pragma once

namespace gdisc {

/// Numerical thresholds shared by every module. One record, passed by
/// const reference; the CLI can override individual fields.
struct Tolerances {
    double psd = 1e-10;            // semidefinite tests, scaled by max(1, ||V||)
    double reconstruct = 1e-9;     // relative residual of decompositions
    double symmetry = 1e-12;       // relative asymmetry accepted on input
    double domain = 1e-12;         // strict-positivity margin for V_sigma - V_rho and arcoth
    double purity = 1e-9;          // relative residual of V = Omega V^{-1} Omega^T
    double class_rel = 1e-9;       // classification band, relative to ||V_sigma||
    double block = 1e-10;          // off-block residual for product detection
    double condition_warn = 1e12;  // inverse condition number that raises a warning
    double g_argument = 1e-10;     // negative spectrum accepted in the G(.) argument
    double zopt_argument = 1e-12;  // negative radicand accepted in z_opt
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

}  // namespace gdisc
