#pragma once

#include <cmath>

namespace csmm {

// Soft thresholding. Produces an exact floating-point zero inside the dead
// zone so that support counts downstream are unambiguous.
inline double soft_threshold(double y, double t) {
    if (y > t) return y - t;
    if (y < -t) return y + t;
    return 0.0;
}

// Mean squared error of soft thresholding at threshold tau for the scalar
// observation mu + Z, Z standard normal. Even in mu, increasing in |mu|,
// and bounded by 1 + tau^2 (the limit as |mu| grows).
double soft_threshold_mse(double mu, double tau);

// Same risk averaged over the symmetric three-point distribution that puts
// mass 1 - eps at zero and eps/2 at each of +-mu.
double three_point_mse(double eps, double mu, double tau);

// Solution of the scalar minimax problem over an lp-moment ball of radius
// xi: the least-favorable three-point distribution together with the
// minimax threshold and risk value. eps * mu^p equals xi^p at the optimum.
struct ScalarMinimax {
    double value = 0.0;
    double tau = 0.0;
    double mu = 0.0;
    double eps = 0.0;
};

// Exact minimax risk via nested optimization: an outer sweep over the
// sparsity of saturated three-point priors against an inner threshold
// minimization. Requires p in (0, 2] and xi > 0.
ScalarMinimax scalar_minimax(double p, double xi);

// Radius at which the minimax risk reaches m, for m in (0, 1). Monotone
// inverse of the risk in xi, solved by bisection to |risk - m| <= 1e-8.
double scalar_minimax_inverse(double p, double m);

// Closed-form sparse-limit approximations (valid only for xi^p < 1):
// threshold and spike location sqrt(2 log(1/xi^p)), and the leading-order
// risk. Useful as bracket seeds and for convergence checks.
ScalarMinimax scalar_minimax_asymptotic(double p, double xi);

// Upper end of the threshold search interval used by the minimax solvers.
double threshold_search_limit(double p, double xi);

} // namespace csmm
