#include "csmm/state_evolution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <type_traits>

#include "csmm/normal.hpp"
#include "csmm/optimize.hpp"
#include "csmm/scalar_risk.hpp"

namespace csmm {

namespace {

void check_config(const SEConfig& cfg) {
    if (!(cfg.delta > 0.0) || !(cfg.delta < 1.0))
        throw std::invalid_argument("state evolution: delta must lie in (0, 1)");
    if (cfg.sigma < 0.0) throw std::invalid_argument("state evolution: sigma must be >= 0");
    if (cfg.tau < 0.0) throw std::invalid_argument("state evolution: tau must be >= 0");
}

double nonzero_mass_of(const Prior& prior) {
    return std::visit(
        [](const auto& nu) -> double {
            using T = std::decay_t<decltype(nu)>;
            if constexpr (std::is_same_v<T, DiscretePrior>)
                return nu.nonzero_mass();
            else
                return 1.0;
        },
        prior);
}

} // namespace

double se_map(double m, const SEConfig& cfg) {
    check_config(cfg);
    if (m < 0.0) throw std::invalid_argument("se_map: m must be >= 0");
    const double nv = cfg.sigma * cfg.sigma + m / cfg.delta;
    if (nv == 0.0) return 0.0;
    return prior_mse(nv, cfg.prior, cfg.tau);
}

FixedPoint solve_fixed_point(const SEConfig& cfg) {
    check_config(cfg);
    FixedPoint fp;

    // The map's slope at large m is soft_threshold_mse(0, tau) / delta for
    // every prior; at or above one there is no finite fixed point.
    if (soft_threshold_mse(0.0, cfg.tau) >= cfg.delta) {
        fp.diverged = true;
        fp.m = std::numeric_limits<double>::infinity();
        fp.npi = std::numeric_limits<double>::infinity();
        return fp;
    }

    double m = 1000.0 * cfg.delta * (cfg.sigma * cfg.sigma + scale_hint(cfg.prior) + 1.0);
    int doublings = 0;
    while (se_map(m, cfg) >= m) {
        m *= 2.0;
        if (++doublings > 300) {
            fp.diverged = true;
            fp.m = std::numeric_limits<double>::infinity();
            fp.npi = std::numeric_limits<double>::infinity();
            return fp;
        }
    }

    // From above the largest fixed point the iteration decreases
    // monotonically onto it.
    constexpr int max_iter = 100000;
    double step_prev = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        const double mn = se_map(m, cfg);
        fp.iterations = it + 1;
        const double step = m - mn;
        if (std::abs(step) <= 1e-12 * (1.0 + m)) {
            fp.m = mn;
            fp.converged = true;
            fp.npi = cfg.sigma * cfg.sigma + fp.m / cfg.delta;
            return fp;
        }
        // Near-critical thresholds contract too slowly for plain
        // iteration; hand over to bisection once that is evident.
        if (it > 2000 && step_prev > 0.0 && step > 0.999 * step_prev) break;
        step_prev = step;
        m = mn;
    }

    // Near-unit contraction rate: finish with bisection on m - map(m).
    // The current iterate still lies above the fixed point.
    double lo = 0.0, hi = m;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (mid - se_map(mid, cfg) < 0.0 ? lo : hi) = mid;
    }
    fp.m = 0.5 * (lo + hi);
    fp.converged = true;
    fp.npi = cfg.sigma * cfg.sigma + fp.m / cfg.delta;
    return fp;
}

double stability_threshold(double delta) {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::invalid_argument("stability_threshold: delta must lie in (0, 1)");
    double hi = 1.0;
    while (soft_threshold_mse(0.0, hi) >= delta) hi *= 2.0;
    return bisect([&](double t) { return soft_threshold_mse(0.0, t) - delta; }, 0.0, hi, 1e-12);
}

Calibration calibrate_lambda(const SEConfig& cfg) {
    check_config(cfg);
    Calibration cal;
    cal.tau = cfg.tau;
    const FixedPoint fp = solve_fixed_point(cfg);
    if (fp.diverged || !fp.converged) return cal;
    cal.m = fp.m;
    cal.npi = fp.npi;
    const double s = std::sqrt(fp.npi);
    if (s == 0.0) {
        // Exact-recovery phase at sigma = 0: the penalty degenerates to 0.
        cal.lambda = 0.0;
        cal.onsager =
            (nonzero_mass_of(cfg.prior) + (1.0 - nonzero_mass_of(cfg.prior)) * 2.0 * normal_sf(cfg.tau)) /
            cfg.delta;
        cal.valid = true;
        return cal;
    }
    const double exceed = exceedance(cfg.prior, s, cfg.tau);
    cal.onsager = exceed / cfg.delta;
    cal.lambda = cfg.tau * s * (1.0 - cal.onsager);
    cal.valid = true;
    return cal;
}

Calibration calibrate_tau(double lambda, double delta, double sigma, const Prior& prior) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("calibrate_tau: lambda must be positive");
    SEConfig cfg{delta, sigma, 1.0, prior};
    check_config(cfg);

    const double tau0 = stability_threshold(delta);
    auto lambda_at = [&](double tau) {
        cfg.tau = tau;
        return calibrate_lambda(cfg);
    };

    double hi = 1.5 * tau0 + 0.5;
    Calibration cal_hi = lambda_at(hi);
    int guard = 0;
    while (!cal_hi.valid || cal_hi.lambda < lambda) {
        hi *= 1.5;
        if (++guard > 100)
            throw std::runtime_error("calibrate_tau: no upper bracket for lambda");
        cal_hi = lambda_at(hi);
    }

    // Step down toward the crossing. Stepping instead of jumping keeps the
    // search on the branch that is continuous from large penalties.
    double lo = hi / 1.15;
    Calibration cal_lo = lambda_at(lo);
    guard = 0;
    while (cal_lo.valid && cal_lo.lambda >= lambda) {
        hi = lo;
        lo /= 1.15;
        if (lo <= tau0 * (1.0 + 1e-12) || ++guard > 400)
            throw std::runtime_error("calibrate_tau: no lower bracket for lambda");
        cal_lo = lambda_at(lo);
    }

    Calibration best = cal_hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const Calibration cal = lambda_at(mid);
        if (cal.valid) best = cal;
        if (cal.valid && std::abs(cal.lambda - lambda) <= 1e-10 * (1.0 + lambda)) break;
        if (!cal.valid || cal.lambda < lambda)
            lo = mid;
        else
            hi = mid;
    }
    return best;
}

double predicted_amse(double lambda, double delta, double sigma, const Prior& prior) {
    return calibrate_tau(lambda, delta, sigma, prior).m;
}

double zero_penalty_threshold(double delta, double sigma, const Prior& prior) {
    SEConfig cfg{delta, sigma, 1.0, prior};
    check_config(cfg);
    const double tau0 = stability_threshold(delta);

    auto bracket_factor = [&](double tau) {
        cfg.tau = tau;
        const FixedPoint fp = solve_fixed_point(cfg);
        if (fp.diverged) return -1.0;
        if (fp.npi == 0.0) return 1.0 - nonzero_mass_of(prior) / delta;
        return 1.0 - exceedance(prior, std::sqrt(fp.npi), cfg.tau) / delta;
    };

    // The factor is negative just above the stability threshold and tends
    // to one for large tau; bracket in the gap coordinate.
    double gap_hi = tau0 + 1.0;
    int guard = 0;
    while (bracket_factor(gap_hi) <= 0.0) {
        gap_hi = tau0 + 2.0 * (gap_hi - tau0);
        if (++guard > 100)
            throw std::runtime_error("zero_penalty_threshold: no positive bracket");
    }
    double gap_lo = tau0 + (gap_hi - tau0) * 0.5;
    guard = 0;
    while (bracket_factor(gap_lo) > 0.0) {
        gap_hi = gap_lo;
        gap_lo = tau0 + (gap_lo - tau0) * 0.5;
        if (++guard > 200)
            throw std::runtime_error("zero_penalty_threshold: no negative bracket");
    }
    const double crossing = bisect([&](double t) { return bracket_factor(t); }, gap_lo, gap_hi, 1e-10);
    if (sigma > 0.0) return crossing;

    // Without noise the crossing can open an exact-recovery window: the
    // fixed point collapses to zero there and the penalty stays pinned at
    // zero until thresholding bias closes the window. The window closes
    // where the zero solution loses stability, at the upper root of
    //   q (1 + tau^2) + (1 - q) r0(tau) = delta
    // with q the prior's nonzero mass and r0 the zero-signal risk.
    const double q = nonzero_mass_of(prior);
    if (q == 0.0)
        throw std::runtime_error(
            "zero_penalty_threshold: zero prior with zero noise has no positive-penalty phase");
    auto margin = [&](double tau) {
        return q * (1.0 + tau * tau) + (1.0 - q) * soft_threshold_mse(0.0, tau) - delta;
    };
    if (margin(crossing + 1e-9) >= 0.0) return crossing;
    double hi = crossing + 1.0;
    guard = 0;
    while (margin(hi) < 0.0) {
        hi = crossing + 2.0 * (hi - crossing);
        if (++guard > 100)
            throw std::runtime_error("zero_penalty_threshold: recovery window does not close");
    }
    return bisect(margin, crossing, hi, 1e-10);
}

} // namespace csmm
