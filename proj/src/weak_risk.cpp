#include "csmm/weak_risk.hpp"

#include <cmath>
#include <stdexcept>

#include "csmm/optimize.hpp"
#include "csmm/quadrature.hpp"
#include "csmm/rng.hpp"
#include "csmm/scalar_risk.hpp"

namespace csmm {

namespace {

void check_weak_params(double p, double xi) {
    if (!(p > 0.0) || p > 2.0) throw std::invalid_argument("weak risk: p must lie in (0, 2]");
    if (!(xi > 0.0)) throw std::invalid_argument("weak risk: xi must be positive");
}

} // namespace

double weak_tail_envelope(double p, double xi, double t) {
    check_weak_params(p, xi);
    if (t < xi) return 0.0;
    return 1.0 - std::pow(xi / t, p);
}

double weak_magnitude_quantile(double p, double xi, double u) {
    check_weak_params(p, xi);
    if (!(u > 0.0) || u > 1.0)
        throw std::invalid_argument("weak_magnitude_quantile: u must lie in (0, 1]");
    return xi * std::pow(u, -1.0 / p);
}

double weak_lf_mse(double p, double xi, double tau) {
    check_weak_params(p, xi);
    if (tau < 0.0) throw std::invalid_argument("weak_lf_mse: tau must be >= 0");
    const double x_cut = std::max(xi, tau + 10.0);
    const double lxi = std::log(xi);
    double value = 0.0;
    if (x_cut > xi) {
        // Mass concentrates just above xi, so integrate in log magnitude;
        // the weight (xi/x)^p is formed in the exponent to keep it stable
        // for very small radii.
        value = integrate(
            [&](double u) {
                return p * std::exp(p * (lxi - u)) * soft_threshold_mse(std::exp(u), tau);
            },
            lxi, std::log(x_cut), 1e-12);
    }
    // Beyond x_cut the thresholding risk equals 1 + tau^2 up to Gaussian
    // tail terms below 1e-18.
    value += (1.0 + tau * tau) * std::exp(p * (lxi - std::log(x_cut)));
    return value;
}

WeakMinimax weak_minimax(double p, double xi) {
    check_weak_params(p, xi);
    const double tau_hi = threshold_search_limit(p, xi);
    WeakMinimax r;
    r.tau = golden_min([&](double t) { return weak_lf_mse(p, xi, t); }, 0.0, tau_hi, 1e-10);
    r.value = weak_lf_mse(p, xi, r.tau);
    return r;
}

double weak_minimax_inverse(double p, double m) {
    if (!(p > 0.0) || p > 2.0) throw std::invalid_argument("weak_minimax_inverse: p must lie in (0, 2]");
    if (!(m > 0.0) || m >= 1.0)
        throw std::invalid_argument("weak_minimax_inverse: m must lie in (0, 1)");

    // One corrected sparse-limit iterate seeds a geometrically grown
    // bracket; the risk is strictly increasing in xi.
    double xip = 0.5 * (2.0 - p) * m;
    const double big_l = 2.0 * std::log(1.0 / std::min(xip, 0.5));
    xip /= std::pow(big_l, 1.0 - p / 2.0);
    double seed = std::pow(xip, 1.0 / p);
    if (!(seed > 0.0) || !std::isfinite(seed)) seed = m;

    double lo = seed, hi = seed;
    for (int i = 0; i < 120 && weak_minimax(p, lo).value > m; ++i) lo *= 0.5;
    for (int i = 0; i < 120 && weak_minimax(p, hi).value < m; ++i) hi *= 2.0;

    double xi = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
        xi = 0.5 * (lo + hi);
        const double v = weak_minimax(p, xi).value;
        if (std::abs(v - m) <= 1e-8) break;
        (v < m ? lo : hi) = xi;
    }
    return xi;
}

std::vector<double> sample_weak(double p, double xi, std::size_t count, std::uint64_t seed) {
    check_weak_params(p, xi);
    std::vector<double> out(count);
    Rng rng(seed);
    for (auto& v : out) {
        const double mag = weak_magnitude_quantile(p, xi, rng.next_unit());
        v = rng.next_sign() ? mag : -mag;
    }
    return out;
}

} // namespace csmm
