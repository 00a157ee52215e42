#pragma once

#include <cmath>

namespace csmm {

namespace detail {

// 15-point Kronrod extension of 7-point Gauss, on [-1, 1].
inline constexpr double gk_x[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gauss_kronrod_15(F& f, double a, double b, double& kronrod, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = gk_wk[7] * fc;
    double resg = gk_wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double fa = f(c - h * gk_x[j]);
        const double fb = f(c + h * gk_x[j]);
        resk += gk_wk[j] * (fa + fb);
        if (j % 2 == 1) resg += gk_wg[j / 2] * (fa + fb);
    }
    kronrod = resk * h;
    err = std::abs((resk - resg) * h);
}

template <class F>
double adaptive_gk(F& f, double a, double b, double abs_tol, int depth) {
    double k, err;
    gauss_kronrod_15(f, a, b, k, err);
    if (err <= abs_tol || depth >= 52) return k;
    const double c = 0.5 * (a + b);
    return adaptive_gk(f, a, c, 0.5 * abs_tol, depth + 1) +
           adaptive_gk(f, c, b, 0.5 * abs_tol, depth + 1);
}

} // namespace detail

// Adaptive Gauss-Kronrod integration of f over [a, b] to absolute tolerance.
template <class F>
double integrate(F f, double a, double b, double abs_tol = 1e-12) {
    if (a == b) return 0.0;
    return detail::adaptive_gk(f, a, b, abs_tol, 0);
}

} // namespace csmm
