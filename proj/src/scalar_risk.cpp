#include "csmm/scalar_risk.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "csmm/normal.hpp"
#include "csmm/optimize.hpp"

namespace csmm {

double soft_threshold_mse(double mu, double tau) {
    if (tau < 0.0) throw std::invalid_argument("soft_threshold_mse: tau must be >= 0");
    mu = std::abs(mu);
    // All four terms stay individually small in the far tails, so no
    // rescue against overflow is needed even for large mu or tau.
    const double a = normal_cdf(-mu - tau) + normal_cdf(mu - tau);
    return mu * mu + (1.0 + tau * tau - mu * mu) * a +
           (mu - tau) * normal_pdf(mu + tau) - (mu + tau) * normal_pdf(mu - tau);
}

double three_point_mse(double eps, double mu, double tau) {
    if (eps < 0.0 || eps > 1.0)
        throw std::invalid_argument("three_point_mse: eps must lie in [0, 1]");
    return (1.0 - eps) * soft_threshold_mse(0.0, tau) + eps * soft_threshold_mse(mu, tau);
}

double threshold_search_limit(double p, double xi) {
    const double xip = std::pow(xi, p);
    if (xip >= 1.0) return 12.0;
    return std::sqrt(2.0 * std::log(1.0 / xip)) + 10.0;
}

namespace {

void check_p_xi(double p, double xi) {
    if (!(p > 0.0) || p > 2.0) throw std::invalid_argument("scalar minimax: p must lie in (0, 2]");
    if (!(xi > 0.0)) throw std::invalid_argument("scalar minimax: xi must be positive");
}

// Risk of the saturated three-point prior with sparsity eps after the
// threshold has been minimized out.
double saturated_profile(double p, double xi, double eps, double tau_hi, double* tau_out) {
    const double mu = xi * std::pow(eps, -1.0 / p);
    const double tau = golden_min(
        [&](double t) { return three_point_mse(eps, mu, t); }, 0.0, tau_hi, 1e-10);
    if (tau_out) *tau_out = tau;
    return three_point_mse(eps, mu, tau);
}

} // namespace

ScalarMinimax scalar_minimax(double p, double xi) {
    check_p_xi(p, xi);
    const double xip = std::pow(xi, p);
    const double tau_hi = threshold_search_limit(p, xi);

    // Outer maximization over the sparsity of saturated priors: log-spaced
    // scan to localize the peak, then golden refinement of the bracket.
    constexpr int n_scan = 200;
    const double lo = std::min(xip, 1.0) * 1e-6;
    const double step = std::log(1.0 / lo) / (n_scan - 1);
    std::vector<double> eps_grid(n_scan), vals(n_scan);
    for (int i = 0; i < n_scan; ++i) {
        eps_grid[i] = std::min(lo * std::exp(step * i), 1.0);
        vals[i] = saturated_profile(p, xi, eps_grid[i], tau_hi, nullptr);
    }
    const int peak = static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    const double la = std::log(eps_grid[std::max(peak - 1, 0)]);
    const double lb = std::log(eps_grid[std::min(peak + 1, n_scan - 1)]);
    const double log_eps = golden_max(
        [&](double le) { return saturated_profile(p, xi, std::exp(le), tau_hi, nullptr); },
        la, lb, 1e-10);

    ScalarMinimax r;
    r.eps = std::min(std::exp(log_eps), 1.0);
    r.mu = xi * std::pow(r.eps, -1.0 / p);
    r.value = saturated_profile(p, xi, r.eps, tau_hi, &r.tau);
    return r;
}

double scalar_minimax_inverse(double p, double m) {
    if (!(p > 0.0) || p > 2.0) throw std::invalid_argument("scalar_minimax_inverse: p must lie in (0, 2]");
    if (!(m > 0.0) || m >= 1.0)
        throw std::invalid_argument("scalar_minimax_inverse: m must lie in (0, 1)");

    // Seed from the sparse-limit expansion of the inverse, then grow a
    // bracket geometrically. The risk is strictly increasing in xi.
    double seed = std::pow(2.0 * std::log(1.0 / m), 0.5 - 1.0 / p) * std::pow(m, 1.0 / p);
    if (!(seed > 0.0) || !std::isfinite(seed)) seed = m;
    double lo = seed, hi = seed;
    for (int i = 0; i < 120 && scalar_minimax(p, lo).value > m; ++i) lo *= 0.5;
    for (int i = 0; i < 120 && scalar_minimax(p, hi).value < m; ++i) hi *= 2.0;

    double xi = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
        xi = 0.5 * (lo + hi);
        const double v = scalar_minimax(p, xi).value;
        if (std::abs(v - m) <= 1e-8) break;
        (v < m ? lo : hi) = xi;
    }
    return xi;
}

ScalarMinimax scalar_minimax_asymptotic(double p, double xi) {
    check_p_xi(p, xi);
    const double xip = std::pow(xi, p);
    if (xip >= 1.0)
        throw std::invalid_argument("scalar_minimax_asymptotic: requires xi^p < 1");
    const double two_log = 2.0 * std::log(1.0 / xip);
    ScalarMinimax r;
    r.tau = std::sqrt(two_log);
    r.mu = r.tau;
    r.eps = std::pow(xi * xi / two_log, p / 2.0);
    r.value = std::pow(two_log, 1.0 - p / 2.0) * xip;
    return r;
}

} // namespace csmm
