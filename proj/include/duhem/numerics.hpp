#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace duhem {

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bisection on a bracket [a, b] with g(a) and g(b) of opposite sign (or one
// of them zero). Stops once |g(mid)| <= value_tol or the bracket cannot be
// halved any further in floating point.
template <class Function>
double bisect(const Function& g, double a, double b, double value_tol) {
    double ga = g(a);
    double gb = g(b);
    if (ga == 0.0) return a;
    if (gb == 0.0) return b;
    if ((ga > 0.0) == (gb > 0.0)) throw std::invalid_argument("bisect: root not bracketed");
    double best = std::abs(ga) < std::abs(gb) ? a : b;
    double best_value = std::min(std::abs(ga), std::abs(gb));
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (a + b);
        if (mid <= std::min(a, b) || mid >= std::max(a, b)) break;
        const double gm = g(mid);
        if (std::abs(gm) < best_value) {
            best = mid;
            best_value = std::abs(gm);
        }
        if (std::abs(gm) <= value_tol) return mid;
        if ((gm > 0.0) == (ga > 0.0)) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    return best;
}

namespace detail {

template <class Function>
double simpson_recurse(const Function& f, double a, double b, double fa, double fm, double fb, double whole,
                       double tol, int depth, int max_depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= max_depth) throw QuadratureError("adaptive Simpson did not converge within the depth limit");
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

// Adaptive composite Simpson quadrature of f over [a, b] (either orientation)
// to absolute tolerance `tol`. Throws QuadratureError past `max_depth` levels.
template <class Function>
double adaptive_simpson(const Function& f, double a, double b, double tol = 1e-8, int max_depth = 40) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 0, max_depth);
}

}  // namespace duhem
