#pragma once

#include <cmath>
#include <stdexcept>

namespace csmm {

// Golden-section minimization on [a, b]. Requires a unimodal f; returns the
// abscissa once the bracket is narrower than tol * (1 + |x|).
template <class F>
double golden_min(F f, double a, double b, double tol = 1e-10) {
    constexpr double invphi = 0.6180339887498948482;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

template <class F>
double golden_max(F f, double a, double b, double tol = 1e-10) {
    return golden_min([&](double x) { return -f(x); }, a, b, tol);
}

// Bisection for a root of f on [lo, hi]; f(lo) and f(hi) must straddle zero.
// Stops when the bracket is narrower than xtol * (1 + |mid|).
template <class F>
double bisect(F f, double lo, double hi, double xtol = 1e-12, int max_iter = 400) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("bisect: endpoints do not bracket a root");
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= xtol * (1.0 + std::abs(mid))) return mid;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace csmm
