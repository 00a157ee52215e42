#include <doctest.h>

#include <initializer_list>

#include <algorithm>
#include <cmath>
#include <vector>

#include "csmm/rng.hpp"
#include "csmm/scalar_risk.hpp"
#include "csmm/weak_risk.hpp"

namespace {

TEST_SUITE("weak_risk") {

TEST_CASE("magnitude distribution and quantile invert each other") {
    const double p = 0.7, xi = 0.4;
    // No mass below the radius; the law starts exactly at xi.
    CHECK_EQ(csmm::weak_tail_envelope(p, xi, 0.2), 0.0);
    CHECK_EQ(csmm::weak_tail_envelope(p, xi, xi), 0.0);
    for (double u : {1.0, 0.5, 0.01}) {
        const double t = csmm::weak_magnitude_quantile(p, xi, u);
        CHECK_LT(std::abs(csmm::weak_tail_envelope(p, xi, t) - (1.0 - u)), 1e-13);
    }
}

TEST_CASE("zero threshold passes the noise through unchanged") {
    const double cases[4][2] = {{0.5, 0.1}, {1.0, 0.3}, {1.5, 0.7}, {1.0, 0.9}};
    for (int i = 0; i < 4; ++i)
        CHECK_LT(std::abs(csmm::weak_lf_mse(cases[i][0], cases[i][1], 0.0) - 1.0), 1e-9);
}

TEST_CASE("quadrature risk agrees with Monte Carlo") {
    const double p = 1.0, xi = 0.5, tau = 2.0;
    csmm::Rng rng(606);
    const int n = 10000000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double mag = xi * std::pow(rng.next_unit(), -1.0 / p);
        const double x = rng.next_sign() ? mag : -mag;
        const double err = csmm::soft_threshold(x + rng.next_normal(), tau) - x;
        const double sq = err * err;
        sum += sq;
        sumsq += sq * sq;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sumsq / n - mean * mean) / n);
    CHECK_LT(std::abs(csmm::weak_lf_mse(p, xi, tau) - mean), 3.0 * se);
}

TEST_CASE("sampled magnitudes pass a Kolmogorov-Smirnov test") {
    const double p = 1.0, xi = 0.5;
    const std::size_t n = 100000;
    std::vector<double> mags;
    mags.reserve(n);
    for (double x : csmm::sample_weak(p, xi, n, 321)) mags.push_back(std::abs(x));
    std::sort(mags.begin(), mags.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = csmm::weak_tail_envelope(p, xi, mags[i]);
        d = std::max(d, std::max((i + 1.0) / n - f, f - static_cast<double>(i) / n));
    }
    CHECK_LT(d, 1.63 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("empirical weak moment tracks the ball radius in the bulk") {
    const double p = 1.0, xi = 0.5;
    const std::size_t n = 1000000;
    std::vector<double> mags;
    mags.reserve(n);
    for (double x : csmm::sample_weak(p, xi, n, 555)) mags.push_back(std::abs(x));
    std::sort(mags.begin(), mags.end());
    // sup over t of t^p P{|X| >= t}, restricted to levels with at least 100
    // exceedances so the supremum is not driven by the extreme order stats.
    double sup = 0.0;
    for (std::size_t i = 0; i + 100 <= n; ++i) {
        const double tail = static_cast<double>(n - i) / n;
        sup = std::max(sup, std::pow(mags[i], p) * tail);
    }
    CHECK_GT(sup, 0.8 * std::pow(xi, p));
    CHECK_LT(sup, 1.35 * std::pow(xi, p));
}

TEST_CASE("weak minimax at p=1, radius 0.1 reproduces frozen values") {
    const csmm::WeakMinimax w = csmm::weak_minimax(1.0, 0.1);
    CHECK_LT(std::abs(w.value / 0.32690666273750235 - 1.0), 1e-9);
    CHECK_LT(std::abs(w.tau / 1.2642237970806649 - 1.0), 1e-9);
}

TEST_CASE("weak minimax dominates the moment-ball minimax") {
    const double cases[4][2] = {{0.5, 0.1}, {1.0, 0.1}, {1.0, 0.3}, {1.5, 0.5}};
    for (int i = 0; i < 4; ++i) {
        const double p = cases[i][0];
        const double xi = std::pow(cases[i][1], 1.0 / p);
        CHECK_GT(csmm::weak_minimax(p, xi).value, csmm::scalar_minimax(p, xi).value);
    }
}

TEST_CASE("weak risk and minimax value increase with the radius") {
    CHECK_LT(csmm::weak_lf_mse(1.0, 0.1, 1.5), csmm::weak_lf_mse(1.0, 0.3, 1.5));
    CHECK_LT(csmm::weak_lf_mse(1.0, 0.3, 1.5), csmm::weak_lf_mse(1.0, 0.5, 1.5));
    CHECK_LT(csmm::weak_minimax(1.0, 0.1).value, csmm::weak_minimax(1.0, 0.3).value);
}

TEST_CASE("inverse of the weak minimax risk round-trips") {
    const double xi = csmm::weak_minimax_inverse(1.0, 0.3);
    CHECK_LT(std::abs(csmm::weak_minimax(1.0, xi).value - 0.3), 1e-7);
}

TEST_CASE("sparse-limit ratio sits at its frozen value") {
    for (auto [p, expected] : {std::pair{0.5, 0.836973}, std::pair{1.0, 0.905819}}) {
        const double xi_p = 1e-6;
        const double xi = std::pow(xi_p, 1.0 / p);
        const double asym =
            2.0 / (2.0 - p) * std::pow(2.0 * std::log(1.0 / xi_p), 1.0 - 0.5 * p) * xi_p;
        const double ratio = csmm::weak_minimax(p, xi).value / asym;
        CHECK_LT(std::abs(ratio - expected), 5e-3);
    }
}

}  // TEST_SUITE

}  // namespace
