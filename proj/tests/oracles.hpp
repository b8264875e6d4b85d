#pragma once

// Reference formulas derived by hand for the test suites. They are written
// independently of the library so that agreement is meaningful.

#include <cmath>

namespace oracle {

// Dahl (r = 1): dy/du = rho (1 - y/Fc) on increasing input, rho (1 + y/Fc) on
// decreasing input. Both are linear ODEs with equilibria +Fc and -Fc.
inline double dahl_up(double y0, double du, double rho, double fc) {
    return fc + (y0 - fc) * std::exp(-rho / fc * du);
}
inline double dahl_down(double y0, double du, double rho, double fc) {
    return -fc + (y0 + fc) * std::exp(-rho / fc * du);
}

inline double dahl_omega(double tau, double y, double u, double rho, double fc) {
    return tau >= u ? dahl_up(y, tau - u, rho, fc) : dahl_down(y, u - tau, rho, fc);
}

// Crossing of omega with the zero curve.
inline double dahl_lambda(double y, double u, double rho, double fc) {
    if (y >= 0.0) return u - fc / rho * std::log((y + fc) / fc);
    return u + fc / rho * std::log((fc - y) / fc);
}

// Storage = -int_u^Lambda omega. On [Lambda, u] for y >= 0 omega is the
// decreasing branch: int = -fc L + (y + fc)(fc/rho)(1 - e^{-rho L/fc}), with
// L = u - Lambda and e^{-rho L/fc} = fc / (y + fc).
inline double dahl_storage(double y, double rho, double fc) {
    const double a = std::abs(y);
    const double L = fc / rho * std::log((a + fc) / fc);
    return -fc * L + (a + fc) * (fc / rho) * (1.0 - fc / (a + fc));
}

// Bouc-Wen with alpha = beta = zeta = 1: the f2 branch above zero has unit
// slope, so the enclosed triangle gives y^2 / 2.
inline double bouc_wen_storage(double y) { return 0.5 * y * y; }

}  // namespace oracle
