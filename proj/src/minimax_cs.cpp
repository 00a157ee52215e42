#include "csmm/minimax_cs.hpp"

#include <cmath>
#include <stdexcept>

#include "csmm/scalar_risk.hpp"
#include "csmm/state_evolution.hpp"
#include "csmm/weak_risk.hpp"

namespace csmm {

namespace {

void check_inputs(double p, double delta, double xi) {
    if (!(p > 0.0) || p > 2.0) throw std::invalid_argument("minimax: p must lie in (0, 2]");
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::invalid_argument("minimax: delta must lie in (0, 1)");
    if (!(xi > 0.0)) throw std::invalid_argument("minimax: xi must be positive");
}

double scalar_risk_value(double p, double xi) { return scalar_minimax(p, xi).value; }
double weak_risk_value(double p, double xi) { return weak_minimax(p, xi).value; }

// Root of m / (1 + m/delta) = risk(xi_over_sigma / sqrt(1 + m/delta)).
// The left side increases from 0 to delta while the right side decreases,
// so the root is unique; bisect to 1e-10 relative.
template <class RiskFn>
double rescaled_fixed_point(RiskFn risk, double delta, double xi_over_sigma) {
    auto excess = [&](double m) {
        const double s = std::sqrt(1.0 + m / delta);
        return m / (1.0 + m / delta) - risk(xi_over_sigma / s);
    };
    double hi = delta;
    int guard = 0;
    while (excess(hi) < 0.0) {
        hi *= 2.0;
        if (++guard > 200) throw std::runtime_error("minimax: rescaled fixed point unbounded");
    }
    double lo = 0.0, m = hi;
    for (int i = 0; i < 300; ++i) {
        m = 0.5 * (lo + hi);
        if (hi - lo <= 1e-10 * (1.0 + m)) break;
        (excess(m) < 0.0 ? lo : hi) = m;
    }
    return m;
}

void attach_calibration(MinimaxReport& r) {
    const Calibration cal = calibrate_lambda(SEConfig{r.delta, r.sigma, r.tau, r.least_favorable});
    if (!cal.valid) throw std::runtime_error("minimax: calibration failed at the saddle");
    r.lambda = cal.lambda;
    r.npi = cal.npi;
}

} // namespace

MinimaxReport minimax_noiseless(double p, double delta, double xi) {
    check_inputs(p, delta, xi);
    MinimaxReport r;
    r.family = BallFamily::lp_moment;
    r.p = p;
    r.delta = delta;
    r.xi = xi;
    r.sigma = 0.0;

    r.xi_eff = scalar_minimax_inverse(p, delta);
    r.value = delta * xi * xi / (r.xi_eff * r.xi_eff);
    const ScalarMinimax sm = scalar_minimax(p, r.xi_eff);
    r.tau = sm.tau;
    r.mu = (xi / r.xi_eff) * sm.mu;
    r.eps = sm.eps;
    r.least_favorable = DiscretePrior::three_point(r.eps, r.mu);
    attach_calibration(r);
    return r;
}

MinimaxReport minimax_noisy(double p, double delta, double xi, double sigma) {
    check_inputs(p, delta, xi);
    if (!(sigma > 0.0)) throw std::invalid_argument("minimax_noisy: sigma must be positive");
    MinimaxReport r;
    r.family = BallFamily::lp_moment;
    r.p = p;
    r.delta = delta;
    r.xi = xi;
    r.sigma = sigma;

    const double m = rescaled_fixed_point(
        [&](double x) { return scalar_risk_value(p, x); }, delta, xi / sigma);
    r.value = sigma * sigma * m;
    const double s = std::sqrt(1.0 + m / delta);
    r.xi_eff = (xi / sigma) / s;
    const ScalarMinimax sm = scalar_minimax(p, r.xi_eff);
    r.tau = sm.tau;
    r.mu = sigma * s * sm.mu;
    r.eps = sm.eps;
    r.least_favorable = DiscretePrior::three_point(r.eps, r.mu);
    attach_calibration(r);
    return r;
}

MinimaxReport minimax_noiseless_weak(double p, double delta, double xi) {
    check_inputs(p, delta, xi);
    MinimaxReport r;
    r.family = BallFamily::weak_lp;
    r.p = p;
    r.delta = delta;
    r.xi = xi;
    r.sigma = 0.0;

    r.xi_eff = weak_minimax_inverse(p, delta);
    r.value = delta * xi * xi / (r.xi_eff * r.xi_eff);
    r.tau = weak_minimax(p, r.xi_eff).tau;
    r.least_favorable = WeakLpPrior{p, xi};
    attach_calibration(r);
    return r;
}

MinimaxReport minimax_noisy_weak(double p, double delta, double xi, double sigma) {
    check_inputs(p, delta, xi);
    if (!(sigma > 0.0)) throw std::invalid_argument("minimax_noisy_weak: sigma must be positive");
    MinimaxReport r;
    r.family = BallFamily::weak_lp;
    r.p = p;
    r.delta = delta;
    r.xi = xi;
    r.sigma = sigma;

    const double m = rescaled_fixed_point(
        [&](double x) { return weak_risk_value(p, x); }, delta, xi / sigma);
    r.value = sigma * sigma * m;
    const double s = std::sqrt(1.0 + m / delta);
    r.xi_eff = (xi / sigma) / s;
    r.tau = weak_minimax(p, r.xi_eff).tau;
    r.least_favorable = WeakLpPrior{p, xi};
    attach_calibration(r);
    return r;
}

SmallNoiseExpansion small_noise_expansion(double p, double delta) {
    if (!(p > 0.0) || p > 2.0)
        throw std::invalid_argument("small_noise_expansion: p must lie in (0, 2]");
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::invalid_argument("small_noise_expansion: delta must lie in (0, 1)");

    // Two large radii separate the quadratic term from the constant; the
    // truncation error of the extracted pair is O(xi_a^-2).
    const double xi_a = 1e3, xi_b = 1e4;
    auto m_of = [&](double xi) {
        return rescaled_fixed_point([&](double x) { return scalar_risk_value(p, x); }, delta, xi);
    };
    const double ma = m_of(xi_a);
    const double mb = m_of(xi_b);

    SmallNoiseExpansion e;
    e.c0 = (mb - ma) / (xi_b * xi_b - xi_a * xi_a);
    const double inv = scalar_minimax_inverse(p, delta);
    e.c0_quadratic_inverse = delta / (inv * inv);
    e.c0_linear_inverse = delta / inv;

    // The constant term needs the value to about twelve digits of the leading
    // term, beyond what subtracting the pair can deliver; it follows instead
    // from the slope of the scalar risk at the inverse point.
    const double h = inv * 1e-3;
    const double slope =
        (scalar_minimax(p, inv + h).value - scalar_minimax(p, inv - h).value) / (2.0 * h);
    e.c1 = 2.0 * delta * delta / (slope * inv) - delta;
    return e;
}

TraditionalReport traditional_scaling(const MinimaxReport& report, double big_n) {
    if (report.sigma != 0.0)
        throw std::invalid_argument("traditional_scaling: requires a noiseless report");
    if (!(big_n > 1.0)) throw std::invalid_argument("traditional_scaling: N must exceed 1");

    TraditionalReport t;
    t.big_n = big_n;
    t.n = report.delta * big_n;
    t.factor = std::pow(big_n, 1.0 - 2.0 / report.p);
    t.value_total = t.factor * report.value;
    t.lambda_scaled = std::pow(big_n, -1.0 / report.p) * report.lambda;

    const double log_term = 2.0 * std::log(big_n / t.n);
    t.value_asymptotic =
        report.xi * report.xi * std::pow(log_term / t.n, 2.0 / report.p - 1.0);
    t.lambda_asymptotic = report.xi * std::pow(log_term / t.n, 1.0 / report.p);
    if (report.family == BallFamily::weak_lp) {
        const double half_gap = 1.0 - report.p / 2.0;
        t.value_asymptotic *= std::pow(half_gap, -2.0 / report.p);
        t.lambda_asymptotic *= std::pow(half_gap, -1.0 / report.p);
    }
    return t;
}

SaddleReport saddle_check(double p, double delta, double xi, double sigma, int lambda_points) {
    SaddleReport s;
    s.report = sigma > 0.0 ? minimax_noisy(p, delta, xi, sigma)
                           : minimax_noiseless(p, delta, xi);
    const MinimaxReport& r = s.report;
    s.amse_at_saddle = predicted_amse(r.lambda, delta, sigma, r.least_favorable);

    // Penalty sweep at the least-favorable prior: the saddle value must be
    // the minimum of this profile.
    const double lo = 0.5, hi = 2.0;
    for (int i = 0; i < lambda_points; ++i) {
        const double f = lo * std::exp(std::log(hi / lo) * i / (lambda_points - 1));
        const double lam = r.lambda * f;
        SaddleRow row;
        row.label = "lambda x " + std::to_string(f);
        row.lambda = lam;
        row.amse = predicted_amse(lam, delta, sigma, r.least_favorable);
        s.max_lambda_violation =
            std::max(s.max_lambda_violation, s.amse_at_saddle - row.amse);
        s.lambda_rows.push_back(std::move(row));
    }

    // Prior sweep at the calibrated penalty: every law in the same
    // lp-moment ball must do no worse than the least-favorable one.
    std::vector<std::pair<std::string, Prior>> rivals;
    for (double f : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double eps = std::min(r.eps * f, 1.0);
        const double mu = xi * std::pow(eps, -1.0 / p);
        rivals.emplace_back("saturated eps x " + std::to_string(f),
                            DiscretePrior::three_point(eps, mu));
    }
    {
        // Two-scale law splitting the moment budget between mu*/2 and 2mu*.
        const double mu1 = 0.5 * r.mu, mu2 = 2.0 * r.mu;
        const double e1 = 0.5 * std::pow(xi, p) / std::pow(mu1, p);
        const double e2 = 0.5 * std::pow(xi, p) / std::pow(mu2, p);
        if (e1 + e2 < 1.0)
            rivals.emplace_back(
                "two-scale",
                DiscretePrior({0.0, mu1, -mu1, mu2, -mu2},
                              {1.0 - e1 - e2, 0.5 * e1, 0.5 * e1, 0.5 * e2, 0.5 * e2}));
    }
    {
        // Geometric ladder of spikes spending the moment budget evenly.
        const int rungs = 4;
        std::vector<double> atoms{0.0};
        std::vector<double> weights{1.0};
        double used = 0.0;
        for (int k = 0; k < rungs; ++k) {
            const double mu = r.mu * std::pow(2.0, k - 1);
            const double ek = (std::pow(xi, p) / rungs) / std::pow(mu, p);
            atoms.push_back(mu);
            atoms.push_back(-mu);
            weights.push_back(0.5 * ek);
            weights.push_back(0.5 * ek);
            used += ek;
        }
        if (used < 1.0) {
            weights[0] = 1.0 - used;
            rivals.emplace_back("spike ladder", DiscretePrior(atoms, weights));
        }
    }

    for (auto& [label, nu] : rivals) {
        SaddleRow row;
        row.label = label;
        row.lambda = r.lambda;
        row.amse = predicted_amse(r.lambda, delta, sigma, nu);
        s.max_prior_violation =
            std::max(s.max_prior_violation, row.amse - s.amse_at_saddle);
        s.prior_rows.push_back(std::move(row));
    }
    return s;
}

} // namespace csmm
