#pragma once

#include "csmm/prior.hpp"

namespace csmm {

// One asymptotic description of thresholded iterative recovery:
// undersampling ratio delta in (0, 1), measurement noise sigma >= 0, signal
// law, and threshold multiplier tau.
struct SEConfig {
    double delta = 0.5;
    double sigma = 0.0;
    double tau = 1.0;
    Prior prior = DiscretePrior::point_mass_at_zero();
};

// The state evolution map: risk of thresholding at effective noise
// sigma^2 + m / delta. Increasing and concave in m; continuous at m = 0.
double se_map(double m, const SEConfig& cfg);

struct FixedPoint {
    double m = 0.0;            // highest fixed point of the map
    double npi = 0.0;          // effective noise sigma^2 + m / delta
    int iterations = 0;
    bool converged = false;
    bool diverged = false;     // no finite fixed point (tau at or below stability)
};

// Highest fixed point by monotone iteration from above, with a bisection
// fallback when the contraction rate is close to one.
FixedPoint solve_fixed_point(const SEConfig& cfg);

// Threshold below which the map has no finite fixed point: the unique root
// of soft_threshold_mse(0, tau) = delta.
double stability_threshold(double delta);

// Threshold at which the calibrated penalty crosses zero from below, for
// the given (delta, sigma, prior). Penalties are positive above it. With
// sigma = 0 this is the upper edge of the exact-recovery window when one
// opens; penalties are pinned at zero throughout the window itself.
double zero_penalty_threshold(double delta, double sigma, const Prior& prior);

struct Calibration {
    double lambda = 0.0;
    double tau = 0.0;
    double m = 0.0;            // fixed-point risk at this threshold
    double npi = 0.0;
    double onsager = 0.0;      // limiting support fraction per measurement
    bool valid = false;
};

// Penalty equivalent to threshold cfg.tau: lambda = tau * sqrt(npi) times
// one minus the limiting support fraction per measurement.
Calibration calibrate_lambda(const SEConfig& cfg);

// Inverse map: threshold whose calibrated penalty equals lambda > 0. Walks
// down from a high threshold so that, when the noiseless map has an exact
// recovery phase, the branch reachable from large penalties is selected.
Calibration calibrate_tau(double lambda, double delta, double sigma, const Prior& prior);

// Fixed-point risk of the penalized estimator at penalty lambda.
double predicted_amse(double lambda, double delta, double sigma, const Prior& prior);

} // namespace csmm
