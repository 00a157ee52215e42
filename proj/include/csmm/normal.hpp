#pragma once

#include <cmath>

namespace csmm {

inline constexpr double inv_sqrt_2pi = 0.39894228040143267794;
inline constexpr double inv_sqrt_2 = 0.70710678118654752440;

// Standard normal density.
inline double normal_pdf(double x) {
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

// Standard normal CDF via erfc, accurate in both tails.
inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * inv_sqrt_2);
}

// Upper tail P{Z > x} without cancellation for large x.
inline double normal_sf(double x) {
    return 0.5 * std::erfc(x * inv_sqrt_2);
}

} // namespace csmm
