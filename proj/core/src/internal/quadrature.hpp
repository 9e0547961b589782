#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

namespace iontide::internal {

// Adaptive Simpson integration. Works for double and std::complex<double>
// integrands. Each panel gets an error allowance proportional to its share
// of the total width, so the summed error stays below
// tol * (abs_scale + |whole|); a width floor keeps roundoff from driving
// the recursion to full depth.

inline double quad_abs(double v) { return std::abs(v); }
inline double quad_abs(const std::complex<double>& v) { return std::abs(v); }

template <class F, class R>
R adaptive_simpson_rec(const F& f, double a, double b, R fa, R fm, R fb, R whole,
                       double budget_per_width, double width_floor, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const R flm = f(lm);
    const R frm = f(rm);
    const double h6 = (b - a) / 12.0;
    const R left = h6 * (fa + 4.0 * flm + fm);
    const R right = h6 * (fm + 4.0 * frm + fb);
    const R delta = left + right - whole;
    if (depth <= 0 || (b - a) < width_floor ||
        quad_abs(delta) <= 15.0 * budget_per_width * (b - a)) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, budget_per_width, width_floor,
                                depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, budget_per_width, width_floor,
                                depth - 1);
}

template <class F>
auto adaptive_simpson(const F& f, double a, double b, double rel_tol, double abs_scale = 0.0,
                      int max_depth = 30) {
    using R = decltype(f(a));
    if (a == b) return R{};
    const R fa = f(a);
    const R fb = f(b);
    const R fm = f(0.5 * (a + b));
    const R whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double width = std::abs(b - a);
    const double budget_per_width = rel_tol * (abs_scale + quad_abs(whole)) / width;
    const double width_floor = 1e-12 * width;
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, budget_per_width, width_floor,
                                max_depth);
}

} // namespace iontide::internal
