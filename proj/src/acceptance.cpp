#include "csmm/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "csmm/amp.hpp"
#include "csmm/lasso.hpp"
#include "csmm/minimax_cs.hpp"
#include "csmm/optimize.hpp"
#include "csmm/parallel.hpp"
#include "csmm/prior.hpp"
#include "csmm/rng.hpp"
#include "csmm/scalar_risk.hpp"
#include "csmm/state_evolution.hpp"
#include "csmm/weak_risk.hpp"

namespace csmm {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Monte Carlo risk of thresholding mu + Z at tau; returns (mean, standard error).
std::pair<double, double> mc_risk(double mu, double tau, long long samples,
                                  std::uint64_t seed, std::uint64_t stream) {
    Rng rng(seed, stream);
    double sum = 0.0, sum_sq = 0.0;
    for (long long k = 0; k < samples; ++k) {
        const double est = soft_threshold(mu + rng.next_normal(), tau);
        const double err = (est - mu) * (est - mu);
        sum += err;
        sum_sq += err * err;
    }
    const double mean = sum / samples;
    const double var = std::max(0.0, sum_sq / samples - mean * mean);
    return {mean, std::sqrt(var / samples)};
}

CriterionResult a1_closed_form_vs_monte_carlo(const AcceptanceHooks& h) {
    CriterionResult r;
    r.name = "A1";
    constexpr int pairs = 20;
    constexpr long long samples = 10'000'000;

    struct Row {
        double mu = 0, tau = 0, closed = 0, mc = 0, se = 0;
    };
    std::vector<Row> rows(pairs);
    {
        Rng pick(4101);
        for (auto& row : rows) {
            row.mu = 4.0 * pick.next_unit();
            row.tau = 2.5 * pick.next_unit();
        }
    }
    parallel_for(pairs, [&](std::size_t i) {
        Row& row = rows[i];
        row.closed = h.scalar_mse(row.mu, row.tau);
        const auto [mean, se] = mc_risk(row.mu, row.tau, samples, 4102, i + 1);
        row.mc = mean;
        row.se = se;
    });

    double worst = 0.0;
    std::size_t worst_i = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double dev = std::abs(rows[i].closed - rows[i].mc) / rows[i].se;
        if (dev > worst) {
            worst = dev;
            worst_i = i;
        }
    }
    r.measured = worst;
    r.pass = worst <= 3.0;
    std::ostringstream d;
    d << "max |closed-mc|/se over " << pairs << " pairs at 1e7 samples = " << fmt(worst)
      << ", worst at mu=" << fmt(rows[worst_i].mu) << " tau=" << fmt(rows[worst_i].tau)
      << " (closed=" << fmt(rows[worst_i].closed) << ", mc=" << fmt(rows[worst_i].mc)
      << ", se=" << fmt(rows[worst_i].se) << "); bound 3";
    r.detail = d.str();
    return r;
}

CriterionResult a2_grid_oracle(const AcceptanceHooks& h) {
    CriterionResult r;
    r.name = "A2";
    const double p = 1.0;
    double worst_diff = 0.0, worst_sat = 0.0;
    std::ostringstream d;

    for (const double xi_p : {0.05, 0.1, 0.3}) {
        const double xi = std::pow(xi_p, 1.0 / p);
        const ScalarMinimax sm = scalar_minimax(p, xi);

        constexpr int n_eps = 2000, n_tau = 2000;
        const double tau_max = threshold_search_limit(p, xi);
        const double le_lo = std::log(xi_p * 1e-4);
        const double le_hi = 0.0;  // eps = 1
        std::vector<double> inner(n_eps);
        parallel_for(n_eps, [&](std::size_t ie) {
            const double eps =
                std::exp(le_lo + (le_hi - le_lo) * static_cast<double>(ie) / (n_eps - 1));
            const double mu = std::pow(xi_p / eps, 1.0 / p);
            double best = std::numeric_limits<double>::infinity();
            for (int it = 0; it < n_tau; ++it) {
                const double tau = tau_max * static_cast<double>(it) / (n_tau - 1);
                const double risk =
                    (1.0 - eps) * h.scalar_mse(0.0, tau) + eps * h.scalar_mse(mu, tau);
                best = std::min(best, risk);
            }
            inner[ie] = best;
        });
        const double grid_value = *std::max_element(inner.begin(), inner.end());
        const double diff = std::abs(grid_value - sm.value);
        const double sat = std::abs(sm.eps * std::pow(sm.mu, p) - xi_p);
        worst_diff = std::max(worst_diff, diff);
        worst_sat = std::max(worst_sat, sat);
        d << "xi_p=" << fmt(xi_p) << ": solver=" << fmt(sm.value)
          << " grid=" << fmt(grid_value) << " |diff|=" << fmt(diff) << "; ";
    }
    d << "saturation defect max=" << fmt(worst_sat) << "; bounds 1e-4 / 1e-8";
    r.measured = worst_diff;
    r.pass = worst_diff <= 1e-4 && worst_sat <= 1e-8;
    r.detail = d.str();
    return r;
}

CriterionResult a3_sparse_asymptotics(const AcceptanceHooks&) {
    CriterionResult r;
    r.name = "A3";
    const double xi_p = 1e-6;
    const double ell = std::log(1.0 / xi_p);
    std::ostringstream d;
    double worst_ratio = 1.0;
    bool ok = true;
    for (const double p : {0.5, 1.0}) {
        const double xi = std::pow(xi_p, 1.0 / p);
        const double value = scalar_minimax(p, xi).value;
        const double asym = std::pow(2.0 * ell, 1.0 - p / 2.0) * xi_p;
        const double ratio = value / asym;
        ok = ok && ratio >= 0.75 && ratio <= 1.25;
        if (std::abs(ratio - 1.0) > std::abs(worst_ratio - 1.0)) worst_ratio = ratio;
        d << "p=" << fmt(p) << ": ratio=" << fmt(ratio) << "; ";
    }
    d << "band [0.75, 1.25]";
    r.measured = worst_ratio;
    r.pass = ok;
    r.detail = d.str();
    return r;
}

CriterionResult a4_noise_expansion(const AcceptanceHooks&) {
    CriterionResult r;
    r.name = "A4";
    const double p = 1.0, delta = 0.25, xi = 1.0;

    const double sigma = 1e-3 * xi;
    const MinimaxReport noisy = minimax_noisy(p, delta, xi, sigma);
    const double inv = scalar_minimax_inverse(p, delta);
    const double noiseless_value = delta * xi * xi / (inv * inv);
    const double rel1 = std::abs(noisy.value - noiseless_value) / noiseless_value;
    const bool c1_ok = rel1 <= 1e-3;

    const SmallNoiseExpansion ex = small_noise_expansion(p, delta);
    const double rel2 =
        std::abs(ex.c0 - ex.c0_quadratic_inverse) / ex.c0_quadratic_inverse;
    const double rel2_lin = std::abs(ex.c0 - ex.c0_linear_inverse) /
                            std::max(ex.c0_linear_inverse, 1e-300);
    const bool c2_ok = rel2 <= 1e-3;

    const SmallNoiseExpansion ex_small = small_noise_expansion(p, 0.01);
    const double c1_target = 2.0 / p;
    const double ratio3 = ex_small.c1 / c1_target;
    const bool c3_ok = std::abs(ratio3 - 1.0) <= 0.15;

    r.measured = ratio3;
    r.pass = c1_ok && c2_ok && c3_ok;
    std::ostringstream d;
    d << "small-sigma limit rel err=" << fmt(rel1) << " (<=1e-3: " << (c1_ok ? "ok" : "FAIL")
      << "); c0=" << fmt(ex.c0) << " vs quadratic-inverse form rel err=" << fmt(rel2)
      << " (<=1e-3: " << (c2_ok ? "ok" : "FAIL")
      << ", linear-inverse form off by " << fmt(rel2_lin)
      << "); c1(0.01)=" << fmt(ex_small.c1) << " vs 2/p=" << fmt(c1_target)
      << " ratio=" << fmt(ratio3) << " (within 15%: " << (c3_ok ? "ok" : "FAIL")
      << "; the measured c1 tracks delta*(2/p-1) -> 0 instead)";
    r.detail = d.str();
    return r;
}

// Fixed point of the one-dimensional recursion computed from a pluggable
// scalar risk, so a biased risk moves the prediction but not the simulation.
double hooked_fixed_point(const AcceptanceHooks& h, double delta, double sigma,
                          double eps, double mu, double tau, double start) {
    double m = start;
    for (int it = 0; it < 200000; ++it) {
        const double nv = sigma * sigma + m / delta;
        const double s = std::sqrt(nv);
        const double next =
            nv * ((1.0 - eps) * h.scalar_mse(0.0, tau) + eps * h.scalar_mse(mu / s, tau));
        const double step = std::abs(next - m);
        m = next;
        if (step <= 1e-13 * (1.0 + m)) break;
    }
    return m;
}

CriterionResult a5_amp_vs_prediction(const AcceptanceHooks& h) {
    CriterionResult r;
    r.name = "A5";
    const double p = 1.0, delta = 0.25, xi = 0.3, sigma = 1.0;
    const MinimaxReport rep = minimax_noisy(p, delta, xi, sigma);
    const Prior prior = rep.least_favorable;

    const double start = 1e3 * (sigma * sigma + scale_hint(prior) + 1.0);
    const double predicted =
        hooked_fixed_point(h, delta, sigma, rep.eps, rep.mu, rep.tau, start);

    constexpr int big_n = 4000, n = 1000, trials = 20;
    std::vector<double> mses(trials);
    parallel_for(trials, [&](std::size_t i) {
        const ProblemInstance inst =
            generate_instance(big_n, n, prior, sigma, 500 + i);
        const AmpState st = amp_run(inst, rep.tau, 2000, 1e-8);
        mses[i] = empirical_mse(st.x_hat, inst.x0);
    });
    double mean = 0.0;
    for (double v : mses) mean += v;
    mean /= trials;
    double ss = 0.0;
    for (double v : mses) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / (trials - 1)) / std::sqrt(double(trials));

    const double gap = std::abs(mean - predicted) / predicted;
    r.measured = gap;
    r.pass = gap <= 0.05;
    std::ostringstream d;
    d << "mean empirical mse=" << fmt(mean) << " (se=" << fmt(se) << ", " << trials
      << " trials, N=" << big_n << ") vs predicted=" << fmt(predicted)
      << " (library fixed point " << fmt(rep.value) << "), rel gap=" << fmt(gap)
      << "; bound 0.05";
    r.detail = d.str();
    return r;
}

CriterionResult a6_amp_vs_direct(const AcceptanceHooks&) {
    CriterionResult r;
    r.name = "A6";
    const double p = 1.0, delta = 0.25, xi = 0.3, sigma = 1.0;
    const MinimaxReport rep = minimax_noisy(p, delta, xi, sigma);
    const Prior prior = rep.least_favorable;

    const ProblemInstance inst = generate_instance(500, 125, prior, sigma, 4606);
    const AmpLassoResult amp = amp_lasso(inst, rep.lambda, 4000, 1e-11);
    // The message-passing fixed point minimizes the penalized cost at the
    // penalty it realizes, theta*(1 - support/n); the direct solvers target
    // that penalty, while the realized-vs-requested gap is scored separately.
    const double lambda_real = amp.lambda_hat;
    const LassoSolution prox = solve_lasso(inst, lambda_real, 1e-10, 200000, true);
    const LassoSolution cd = solve_lasso_cd(inst, lambda_real, 1e-10, 200000);

    const double est_gap =
        (amp.state.x_hat - prox.x_hat).norm() / prox.x_hat.norm();
    const double resid_rel = amp.relation_residual / rep.lambda;
    const double obj_gap =
        std::abs(prox.objective - cd.objective) / std::abs(prox.objective);

    const bool est_ok = est_gap <= 1e-3;
    const bool resid_ok = resid_rel <= 1e-2;
    const bool obj_ok = obj_gap <= 1e-9;
    r.measured = est_gap;
    r.pass = est_ok && resid_ok && obj_ok;
    std::ostringstream d;
    d << "estimate rel diff=" << fmt(est_gap) << " (<=1e-3: " << (est_ok ? "ok" : "FAIL")
      << "); penalty identity residual=" << fmt(resid_rel) << " of lambda (<=1e-2: "
      << (resid_ok ? "ok" : "FAIL") << "); prox-vs-cd objective rel gap=" << fmt(obj_gap)
      << " (<=1e-9: " << (obj_ok ? "ok" : "FAIL") << "); N=500, n=125";
    r.detail = d.str();
    return r;
}

// Symmetric discrete law whose tail touches the weak envelope at each atom.
DiscretePrior envelope_ladder(double p, double xi, int rungs, double spacing) {
    std::vector<double> atoms{0.0};
    std::vector<double> weights;
    std::vector<double> levels(rungs);
    std::vector<double> tails(rungs);
    for (int j = 0; j < rungs; ++j) {
        levels[j] = xi * std::pow(spacing, j + 1);
        tails[j] = std::pow(xi / levels[j], p);
    }
    weights.push_back(1.0 - tails[0]);
    for (int j = 0; j < rungs; ++j) {
        const double mass = tails[j] - (j + 1 < rungs ? tails[j + 1] : 0.0);
        atoms.push_back(levels[j]);
        atoms.push_back(-levels[j]);
        weights.push_back(0.5 * mass);
        weights.push_back(0.5 * mass);
    }
    return DiscretePrior(std::move(atoms), std::move(weights));
}

CriterionResult a7_weak_ball(const AcceptanceHooks&) {
    CriterionResult r;
    r.name = "A7";
    std::ostringstream d;

    double worst_identity = 0.0;
    for (const auto& [p, xi_p] :
         std::vector<std::pair<double, double>>{{0.5, 0.05}, {0.75, 0.1}, {1.0, 0.1}, {1.0, 0.3}}) {
        const double xi = std::pow(xi_p, 1.0 / p);
        worst_identity = std::max(worst_identity, std::abs(weak_lf_mse(p, xi, 0.0) - 1.0));
    }
    const bool identity_ok = worst_identity <= 1e-9;
    d << "tau=0 identity defect=" << fmt(worst_identity) << " (<=1e-9: "
      << (identity_ok ? "ok" : "FAIL") << "); ";

    bool dominance_ok = true;
    double min_margin = std::numeric_limits<double>::infinity();
    for (const double p : {0.5, 0.75, 1.0}) {
        for (const double xi_p : {0.01, 0.03, 0.1, 0.3}) {
            const double xi = std::pow(xi_p, 1.0 / p);
            const double weak = weak_minimax(p, xi).value;
            const double strong = scalar_minimax(p, xi).value;
            min_margin = std::min(min_margin, weak - strong);
            dominance_ok = dominance_ok && weak >= strong - 1e-9;
        }
    }
    d << "weak-minus-strong min margin=" << fmt(min_margin) << " (>=0: "
      << (dominance_ok ? "ok" : "FAIL") << "); ";

    bool ratio_ok = true;
    const double xi_p_asym = 1e-6;
    const double ell = std::log(1.0 / xi_p_asym);
    for (const double p : {0.5, 1.0}) {
        const double xi = std::pow(xi_p_asym, 1.0 / p);
        const double value = weak_minimax(p, xi).value;
        const double asym =
            (2.0 / (2.0 - p)) * std::pow(2.0 * ell, 1.0 - p / 2.0) * xi_p_asym;
        const double ratio = value / asym;
        ratio_ok = ratio_ok && ratio >= 0.75 && ratio <= 1.25;
        d << "p=" << fmt(p) << " asym ratio=" << fmt(ratio) << "; ";
    }

    const double p_dom = 1.0, xi_dom = 0.1;
    const WeakMinimax wm = weak_minimax(p_dom, xi_dom);
    const double lf_risk = weak_lf_mse(p_dom, xi_dom, wm.tau);
    double max_rival = -std::numeric_limits<double>::infinity();
    int rivals = 0;
    for (const double mu : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double eps = std::pow(xi_dom / mu, p_dom);
        const DiscretePrior rival = DiscretePrior::three_point(eps, mu);
        max_rival = std::max(max_rival, prior_mse(1.0, rival, wm.tau));
        ++rivals;
    }
    for (int rungs = 2; rungs <= 6; ++rungs) {
        const DiscretePrior rival = envelope_ladder(p_dom, xi_dom, rungs, 2.0);
        max_rival = std::max(max_rival, prior_mse(1.0, rival, wm.tau));
        ++rivals;
    }
    const bool dom10_ok = lf_risk >= max_rival - 1e-8;
    d << rivals << " in-ball rivals at minimax threshold: lf=" << fmt(lf_risk)
      << " max rival=" << fmt(max_rival) << " (dominated: " << (dom10_ok ? "ok" : "FAIL")
      << ")";

    r.measured = lf_risk - max_rival;
    r.pass = identity_ok && dominance_ok && ratio_ok && dom10_ok;
    r.detail = d.str();
    return r;
}

CriterionResult a8_saddle(const AcceptanceHooks&) {
    CriterionResult r;
    r.name = "A8";
    std::ostringstream d;

    double worst = 0.0;
    for (const double sigma : {0.0, 1.0}) {
        const SaddleReport rep = saddle_check(1.0, 0.25, 1.0, sigma, 50);
        worst = std::max(worst, rep.max_lambda_violation);
        worst = std::max(worst, rep.max_prior_violation);
        d << "sigma=" << fmt(sigma) << ": lambda viol=" << fmt(rep.max_lambda_violation)
          << " prior viol=" << fmt(rep.max_prior_violation) << "; ";
    }
    const bool saddle_ok = worst <= 1e-6;

    // Empirical sweep: shared instances across the penalty grid so the
    // column differences use common random numbers.
    const double p = 1.0, delta = 0.25, xi = 0.3, sigma = 1.0;
    const MinimaxReport rep = minimax_noisy(p, delta, xi, sigma);
    constexpr int big_n = 2000, n = 500, trials = 6, points = 7;
    std::vector<ProblemInstance> instances(trials);
    parallel_for(trials, [&](std::size_t i) {
        instances[i] = generate_instance(big_n, n, rep.least_favorable, sigma, 8801 + i);
    });
    std::vector<double> lambdas(points), mean_mse(points);
    for (int k = 0; k < points; ++k) {
        lambdas[k] = rep.lambda * std::pow(2.0, (k - 3) / 3.0);
    }
    std::vector<double> cell(points * trials);
    std::vector<double> taus(points);
    for (int k = 0; k < points; ++k) {
        taus[k] = calibrate_tau(lambdas[k], delta, sigma, rep.least_favorable).tau;
    }
    parallel_for(points * trials, [&](std::size_t idx) {
        const int k = static_cast<int>(idx) / trials;
        const int i = static_cast<int>(idx) % trials;
        const AmpState st = amp_run(instances[i], taus[k], 2000, 1e-8);
        cell[idx] = empirical_mse(st.x_hat, instances[i].x0);
    });
    int arg_min = 0;
    for (int k = 0; k < points; ++k) {
        double mean = 0.0;
        for (int i = 0; i < trials; ++i) mean += cell[k * trials + i];
        mean_mse[k] = mean / trials;
        if (mean_mse[k] < mean_mse[arg_min]) arg_min = k;
    }
    const bool sweep_ok = std::abs(arg_min - 3) <= 1;
    d << "empirical sweep argmin at lambda/lambda*=" << fmt(lambdas[arg_min] / rep.lambda)
      << " (grid ratio 2^(1/3); within one step: " << (sweep_ok ? "ok" : "FAIL") << ")";

    r.measured = worst;
    r.pass = saddle_ok && sweep_ok;
    r.detail = d.str();
    return r;
}

CriterionResult a9_calibration_bijection(const AcceptanceHooks&) {
    CriterionResult r;
    r.name = "A9";
    std::ostringstream d;

    struct Config {
        double delta, sigma;
        Prior prior;
        std::string label;
    };
    std::vector<Config> battery;
    {
        const MinimaxReport noisy = minimax_noisy(1.0, 0.25, 0.3, 1.0);
        battery.push_back({0.25, 1.0, noisy.least_favorable, "noisy-lf"});
        const MinimaxReport clean = minimax_noiseless(1.0, 0.25, 1.0);
        const double eps = clean.eps / 4.0;
        battery.push_back(
            {0.25, 0.0, DiscretePrior::three_point(eps, 1.0 / eps), "recoverable"});
        battery.push_back({0.5, 1.0, WeakLpPrior{1.0, 0.3}, "weak"});
        battery.push_back({0.1, 1.0, DiscretePrior::three_point(0.05, 3.0), "sparse"});
    }

    bool monotone_ok = true;
    double worst_round = 0.0;
    for (const Config& cfg : battery) {
        const double tau1 = zero_penalty_threshold(cfg.delta, cfg.sigma, cfg.prior);
        const double lo = tau1 + 0.02, hi = tau1 + 5.0;
        std::vector<double> lams(100);
        for (int j = 0; j < 100; ++j) {
            const double tau = lo + (hi - lo) * j / 99.0;
            lams[j] = calibrate_lambda(SEConfig{cfg.delta, cfg.sigma, tau, cfg.prior}).lambda;
            if (j > 0 && !(lams[j] > lams[j - 1])) monotone_ok = false;
        }
        double round = 0.0;
        for (int j = 0; j < 100; j += 10) {
            const double tau = lo + (hi - lo) * j / 99.0;
            const Calibration back =
                calibrate_tau(lams[j], cfg.delta, cfg.sigma, cfg.prior);
            round = std::max(round, std::abs(back.tau - tau));
        }
        worst_round = std::max(worst_round, round);
        d << cfg.label << ": tau1=" << fmt(tau1) << " lambda in [" << fmt(lams.front())
          << ", " << fmt(lams.back()) << "] round-trip=" << fmt(round) << "; ";
    }
    d << "strict increase on 100-point grids: " << (monotone_ok ? "ok" : "FAIL")
      << "; round-trip bound 1e-8";

    r.measured = worst_round;
    r.pass = monotone_ok && worst_round <= 1e-8;
    r.detail = d.str();
    return r;
}

CriterionResult a10_traditional_scaling(const AcceptanceHooks&) {
    CriterionResult r;
    r.name = "A10";
    const double p = 1.0, delta = 1e-3, big_n = 1e6;

    const MinimaxReport rep = minimax_noiseless(p, delta, 1.0);
    const TraditionalReport tr = traditional_scaling(rep, big_n);
    const double ratio = tr.value_total / tr.value_asymptotic;
    const bool ratio_ok = std::abs(ratio - 1.0) <= 0.10;

    const double factor_expected = std::pow(big_n, 1.0 - 2.0 / p);
    const bool factor_ok =
        tr.factor == factor_expected &&
        std::abs(tr.value_total - tr.factor * rep.value) <=
            1e-12 * std::abs(tr.value_total);

    const MinimaxReport wrep = minimax_noiseless_weak(p, delta, 1.0);
    const TraditionalReport wtr = traditional_scaling(wrep, big_n);
    const double weak_factor = std::pow(1.0 - p / 2.0, -2.0 / p);
    const double carried = wtr.value_asymptotic / tr.value_asymptotic;
    const bool weak_ok = std::abs(carried - weak_factor) <= 1e-12 * weak_factor;

    r.measured = ratio;
    r.pass = ratio_ok && factor_ok && weak_ok;
    std::ostringstream d;
    d << "N^(1-2/p) factor exact: " << (factor_ok ? "ok" : "FAIL")
      << "; weak asymptotic column carries (1-p/2)^(-2/p)=" << fmt(weak_factor)
      << " (measured " << fmt(carried) << ": " << (weak_ok ? "ok" : "FAIL")
      << "); total/asymptotic=" << fmt(ratio) << " at N=1e6, delta=1e-3 (within 10%: "
      << (ratio_ok ? "ok" : "FAIL")
      << "; the inverse risk at delta=1e-3 sits well above its sparse-limit form, "
         "so the closed form is approached only at far smaller delta)";
    r.detail = d.str();
    return r;
}

}  // namespace

AcceptanceHooks AcceptanceHooks::defaults() {
    AcceptanceHooks h;
    h.scalar_mse = [](double mu, double tau) { return soft_threshold_mse(mu, tau); };
    return h;
}

const std::vector<std::string>& acceptance_names() {
    static const std::vector<std::string> names = {"A1", "A2", "A3", "A4", "A5",
                                                   "A6", "A7", "A8", "A9", "A10"};
    return names;
}

CriterionResult run_criterion(const std::string& name, const AcceptanceHooks& hooks) {
    using Fn = CriterionResult (*)(const AcceptanceHooks&);
    static const std::vector<std::pair<std::string, Fn>> dispatch = {
        {"A1", a1_closed_form_vs_monte_carlo},
        {"A2", a2_grid_oracle},
        {"A3", a3_sparse_asymptotics},
        {"A4", a4_noise_expansion},
        {"A5", a5_amp_vs_prediction},
        {"A6", a6_amp_vs_direct},
        {"A7", a7_weak_ball},
        {"A8", a8_saddle},
        {"A9", a9_calibration_bijection},
        {"A10", a10_traditional_scaling},
    };
    for (const auto& [key, fn] : dispatch) {
        if (key == name) {
            try {
                return fn(hooks);
            } catch (const std::exception& e) {
                CriterionResult r;
                r.name = name;
                r.pass = false;
                r.detail = std::string("exception: ") + e.what();
                return r;
            }
        }
    }
    throw std::invalid_argument("unknown acceptance criterion: " + name);
}

CriterionResult run_criterion(const std::string& name) {
    return run_criterion(name, AcceptanceHooks::defaults());
}

std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& subset) {
    const AcceptanceHooks hooks = AcceptanceHooks::defaults();
    std::vector<CriterionResult> out;
    for (const std::string& name : acceptance_names()) {
        if (!subset.empty() &&
            std::find(subset.begin(), subset.end(), name) == subset.end()) {
            continue;
        }
        out.push_back(run_criterion(name, hooks));
    }
    return out;
}

std::string format_criterion_line(const CriterionResult& r) {
    std::ostringstream os;
    os << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " measured=" << fmt(r.measured)
       << " | " << r.detail;
    return os.str();
}

}  // namespace csmm
