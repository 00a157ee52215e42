#pragma once

#include <cstdint>
#include <vector>

namespace csmm {

// Distribution function of |X| for the most dispersed magnitude law with
// weak-lp tail parameter (p, xi): all mass sits on |x| >= xi with
// P{|X| >= t} = (xi/t)^p there.
double weak_tail_envelope(double p, double xi, double t);

// Magnitude quantile of that law: xi * u^(-1/p) for u in (0, 1].
double weak_magnitude_quantile(double p, double xi, double u);

// Soft-thresholding risk at unit noise under the most dispersed law.
// Evaluated by adaptive quadrature in log magnitude plus an analytic tail
// beyond tau + 10 where the risk has flattened to 1 + tau^2. Absolute
// accuracy is driven well below 1e-9.
double weak_lf_mse(double p, double xi, double tau);

struct WeakMinimax {
    double value = 0.0;
    double tau = 0.0;
};

// Minimax risk over the weak-lp ball: a single threshold minimization,
// since the most dispersed law is least favorable for every tau.
WeakMinimax weak_minimax(double p, double xi);

// Radius at which the weak minimax risk reaches m, m in (0, 1).
double weak_minimax_inverse(double p, double m);

// Signed iid draws from the most dispersed law: uniform sign, magnitude by
// inverse CDF. Deterministic in (seed, count).
std::vector<double> sample_weak(double p, double xi, std::size_t count, std::uint64_t seed);

} // namespace csmm
