#pragma once

#include <string>
#include <vector>

#include "csmm/prior.hpp"

namespace csmm {

enum class BallFamily { lp_moment, weak_lp };

// Minimax mean-square error of the penalized estimator over an lp-moment
// or weak-lp ball, with the saddle-point data needed to realize it: the
// least-favorable signal law, the minimax threshold, and the calibrated
// penalty.
struct MinimaxReport {
    BallFamily family = BallFamily::lp_moment;
    double p = 1.0;
    double delta = 0.5;
    double xi = 1.0;
    double sigma = 0.0;
    double value = 0.0;    // minimax AMSE per coordinate
    double npi = 0.0;      // effective noise variance at the saddle
    double xi_eff = 0.0;   // ball radius after the effective-noise rescale
    double tau = 0.0;      // minimax threshold multiplier
    double lambda = 0.0;   // penalty calibrated to tau
    double mu = 0.0;       // spike location (lp_moment family only)
    double eps = 0.0;      // spike mass (lp_moment family only)
    Prior least_favorable = DiscretePrior::point_mass_at_zero();
};

// Noise-free minimax over the lp-moment ball. The recovery-error target
// delta doubles as the undersampling ratio; requires delta in (0, 1).
MinimaxReport minimax_noiseless(double p, double delta, double xi);

// Noisy minimax over the lp-moment ball, sigma > 0. Solved through the
// one-dimensional fixed-point equation in the rescaled risk.
MinimaxReport minimax_noisy(double p, double delta, double xi, double sigma);

MinimaxReport minimax_noiseless_weak(double p, double delta, double xi);
MinimaxReport minimax_noisy_weak(double p, double delta, double xi, double sigma);

// Large-radius expansion of the noisy minimax risk at sigma = 1:
// risk = c0 xi^2 + c1 + O(xi^-2). c0 is extracted from solves at two large
// radii; c1 follows from the slope of the scalar risk at the inverse point.
// The two closed-form candidates for c0 are reported for comparison (the
// quadratic-inverse form is the self-consistent one).
struct SmallNoiseExpansion {
    double c0 = 0.0;
    double c1 = 0.0;
    double c0_quadratic_inverse = 0.0;  // delta / inverse_risk(delta)^2
    double c0_linear_inverse = 0.0;     // delta / inverse_risk(delta)
};
SmallNoiseExpansion small_noise_expansion(double p, double delta);

// Restatement of a noiseless report for suites normalized so that the ball
// radius does not grow with dimension: total squared error over N
// coordinates picks up the factor N^(1 - 2/p) and the penalty N^(-1/p).
// The asymptotic columns are the sparse-limit closed forms.
struct TraditionalReport {
    double big_n = 0.0;
    double n = 0.0;
    double factor = 0.0;            // N^(1 - 2/p)
    double value_total = 0.0;       // factor * per-coordinate value
    double lambda_scaled = 0.0;     // N^(-1/p) * calibrated penalty
    double value_asymptotic = 0.0;
    double lambda_asymptotic = 0.0;
};
TraditionalReport traditional_scaling(const MinimaxReport& report, double big_n);

// Empirical check of the saddle geometry: the penalty row perturbs lambda
// around the calibrated value at the least-favorable prior; the prior row
// swaps in other laws from the same ball at the calibrated penalty.
// Violations measure how far the saddle inequalities fail (0 when clean).
struct SaddleRow {
    std::string label;
    double lambda = 0.0;
    double amse = 0.0;
};
struct SaddleReport {
    MinimaxReport report;
    double amse_at_saddle = 0.0;
    std::vector<SaddleRow> lambda_rows;
    std::vector<SaddleRow> prior_rows;
    double max_lambda_violation = 0.0;  // max over rows of amse* - amse(lambda)
    double max_prior_violation = 0.0;   // max over rows of amse(nu) - amse*
};
SaddleReport saddle_check(double p, double delta, double xi, double sigma,
                          int lambda_points = 50);

} // namespace csmm
