#include <doctest.h>

#include <cmath>
#include <vector>

#include "csmm/normal.hpp"
#include "csmm/prior.hpp"
#include "csmm/rng.hpp"
#include "csmm/scalar_risk.hpp"
#include "csmm/weak_risk.hpp"

namespace {

TEST_SUITE("prior") {

TEST_CASE("three-point law exposes its moments") {
    const csmm::DiscretePrior pr = csmm::DiscretePrior::three_point(0.1, 3.0);
    CHECK_LT(std::abs(pr.nonzero_mass() - 0.1), 1e-14);
    CHECK_LT(std::abs(pr.moment(1.0) - 0.3), 1e-14);
    CHECK_LT(std::abs(pr.moment(0.5) - 0.1 * std::sqrt(3.0)), 1e-14);
    CHECK_LT(std::abs(pr.second_moment() - 0.9), 1e-14);
}

TEST_CASE("degenerate mass collapses to a point mass at zero") {
    const csmm::DiscretePrior pr = csmm::DiscretePrior::point_mass_at_zero();
    CHECK_EQ(pr.nonzero_mass(), 0.0);
    CHECK_EQ(pr.second_moment(), 0.0);
}

TEST_CASE("explicit atom lists keep their weights") {
    const csmm::DiscretePrior pr({-2.0, 0.0, 3.0}, {0.25, 0.5, 0.25});
    CHECK_LT(std::abs(pr.moment(1.0) - 1.25), 1e-14);
    CHECK_LT(std::abs(pr.second_moment() - 3.25), 1e-14);
    CHECK_LT(std::abs(pr.nonzero_mass() - 0.5), 1e-14);
}

TEST_CASE("weights must be a probability vector") {
    CHECK_THROWS(csmm::DiscretePrior({1.0, 2.0}, {0.5, 0.6}));
    CHECK_THROWS(csmm::DiscretePrior({1.0, 2.0}, {1.2, -0.2}));
}

TEST_CASE("sampling is deterministic in the seed") {
    const csmm::Prior pr = csmm::DiscretePrior::three_point(0.1, 3.0);
    const std::vector<double> a = csmm::sample(pr, 1000, 5);
    const std::vector<double> b = csmm::sample(pr, 1000, 5);
    const std::vector<double> c = csmm::sample(pr, 1000, 6);
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("sample frequencies obey the law of large numbers") {
    const csmm::Prior pr = csmm::DiscretePrior::three_point(0.1, 3.0);
    const std::vector<double> xs = csmm::sample(pr, 100000, 99);
    double abs_sum = 0.0;
    int zeros = 0;
    for (double x : xs) {
        abs_sum += std::abs(x);
        if (x == 0.0) ++zeros;
    }
    const double n = static_cast<double>(xs.size());
    // E|X| = 0.3 with Var|X| = 0.81; the zero fraction is binomial at 0.9.
    CHECK_LT(std::abs(abs_sum / n - 0.3), 4.0 * std::sqrt(0.81 / n));
    CHECK_LT(std::abs(zeros / n - 0.9), 4.0 * std::sqrt(0.09 / n));
}

TEST_CASE("heavy-tailed samples stay outside the radius with balanced signs") {
    const csmm::Prior pr = csmm::WeakLpPrior{1.0, 0.3};
    const std::vector<double> xs = csmm::sample(pr, 100000, 17);
    int negative = 0;
    bool outside = true;
    for (double x : xs) {
        outside = outside && std::abs(x) >= 0.3;
        if (x < 0.0) ++negative;
    }
    CHECK(outside);
    const double n = static_cast<double>(xs.size());
    CHECK_LT(std::abs(negative / n - 0.5), 4.0 * std::sqrt(0.25 / n));
}

TEST_CASE("prior risk reduces to the scalar closed forms at unit noise") {
    const csmm::Prior tp = csmm::DiscretePrior::three_point(0.1, 3.0);
    CHECK_LT(std::abs(csmm::prior_mse(1.0, tp, 1.5) - csmm::three_point_mse(0.1, 3.0, 1.5)), 1e-12);
    const csmm::Prior wk = csmm::WeakLpPrior{1.0, 0.3};
    CHECK_LT(std::abs(csmm::prior_mse(1.0, wk, 1.2) - csmm::weak_lf_mse(1.0, 0.3, 1.2)), 1e-9);
}

TEST_CASE("prior risk is scale covariant") {
    // Noise variance s^2 rescales the signal law by 1/s and the risk by s^2.
    const csmm::Prior tp = csmm::DiscretePrior::three_point(0.1, 3.0);
    CHECK_LT(std::abs(csmm::prior_mse(4.0, tp, 1.5) - 4.0 * csmm::three_point_mse(0.1, 1.5, 1.5)),
             1e-11);
    const csmm::Prior wk = csmm::WeakLpPrior{1.0, 0.3};
    CHECK_LT(std::abs(csmm::prior_mse(4.0, wk, 1.2) - 4.0 * csmm::weak_lf_mse(1.0, 0.15, 1.2)),
             1e-8);
}

TEST_CASE("prior risk agrees with Monte Carlo for a five-atom law") {
    const csmm::DiscretePrior pr({-2.0, -1.0, 0.0, 1.0, 2.0}, {0.2, 0.2, 0.2, 0.2, 0.2});
    const double tau = 2.0;
    csmm::Rng rng(4242);
    const int n = 2000000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_unit();
        const double x = u <= 0.2 ? -2.0 : u <= 0.4 ? -1.0 : u <= 0.6 ? 0.0 : u <= 0.8 ? 1.0 : 2.0;
        const double err = csmm::soft_threshold(x + rng.next_normal(), tau) - x;
        const double sq = err * err;
        sum += sq;
        sumsq += sq * sq;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sumsq / n - mean * mean) / n);
    CHECK_LT(std::abs(csmm::prior_mse(1.0, csmm::Prior(pr), tau) - mean), 4.0 * se);
}

TEST_CASE("exceedance matches the Gaussian tail closed forms") {
    const csmm::Prior zero = csmm::DiscretePrior::point_mass_at_zero();
    CHECK_LT(std::abs(csmm::exceedance(zero, 1.7, 2.0) - 2.0 * csmm::normal_sf(2.0)), 1e-13);

    const double eps = 0.1, mu = 3.0, s = 2.0, tau = 1.5;
    const csmm::Prior tp = csmm::DiscretePrior::three_point(eps, mu);
    const double expected = (1.0 - eps) * 2.0 * csmm::normal_sf(tau) +
                            eps * (csmm::normal_sf(tau - mu / s) + csmm::normal_sf(tau + mu / s));
    CHECK_LT(std::abs(csmm::exceedance(tp, s, tau) - expected), 1e-13);
}

TEST_CASE("scale hints are positive and finite") {
    CHECK_GT(csmm::scale_hint(csmm::DiscretePrior::three_point(0.1, 3.0)), 0.0);
    const double wk = csmm::scale_hint(csmm::WeakLpPrior{1.0, 0.3});
    CHECK_GT(wk, 0.0);
    CHECK(std::isfinite(wk));
}

}  // TEST_SUITE

}  // namespace
