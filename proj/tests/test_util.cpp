#include <doctest.h>

#include <cmath>
#include <vector>

#include "csmm/normal.hpp"
#include "csmm/optimize.hpp"
#include "csmm/parallel.hpp"
#include "csmm/quadrature.hpp"
#include "csmm/rng.hpp"

namespace {

TEST_SUITE("util") {

TEST_CASE("rng streams are deterministic and distinct") {
    csmm::Rng a(42, 7), b(42, 7), c(42, 8);
    bool same = true, differs = false;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u64();
        same = same && va == b.next_u64();
        differs = differs || va != c.next_u64();
    }
    CHECK(same);
    CHECK(differs);
}

TEST_CASE("unit draws stay inside (0, 1]") {
    csmm::Rng r(3);
    bool in_range = true;
    for (int i = 0; i < 200000; ++i) {
        const double u = r.next_unit();
        in_range = in_range && u > 0.0 && u <= 1.0;
    }
    CHECK(in_range);
}

TEST_CASE("normal draws have the right first two moments") {
    csmm::Rng r(2024);
    const int n = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = r.next_normal();
        sum += z;
        sumsq += z * z;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK_LT(std::abs(mean), 0.005);
    CHECK_LT(std::abs(var - 1.0), 0.007);
}

TEST_CASE("normal tail functions agree with reference values") {
    CHECK_LT(std::abs(csmm::normal_cdf(0.0) - 0.5), 1e-15);
    CHECK_LT(std::abs(csmm::normal_cdf(1.3) + csmm::normal_cdf(-1.3) - 1.0), 1e-14);
    CHECK_LT(std::abs(csmm::normal_sf(5.0) / 2.8665157187919391e-07 - 1.0), 1e-12);
    CHECK_LT(std::abs(csmm::normal_pdf(0.0) - csmm::inv_sqrt_2pi), 1e-17);
}

TEST_CASE("golden section finds the minimum of a parabola") {
    // sqrt(eps) is the accuracy floor for comparison-based minimization when
    // the objective is order one at the minimum.
    const double x = csmm::golden_min([](double t) { return (t - 3.5) * (t - 3.5) + 1.0; }, 0.0, 10.0);
    CHECK_LT(std::abs(x - 3.5), 1e-7);
}

TEST_CASE("bisection locates a bracketed root and rejects a bad bracket") {
    const double root = csmm::bisect([](double t) { return std::cos(t); }, 0.0, 3.0);
    CHECK_LT(std::abs(root - 1.5707963267948966), 1e-10);
    CHECK_THROWS(csmm::bisect([](double t) { return 1.0 + t * t; }, 0.0, 1.0));
}

TEST_CASE("quadrature integrates smooth functions to tolerance") {
    const double cubic = csmm::integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK_LT(std::abs(cubic - 1.0 / 3.0), 1e-12);
    const double mass = csmm::integrate([](double x) { return csmm::normal_pdf(x); }, -8.0, 8.0);
    CHECK_LT(std::abs(mass - 1.0), 1e-10);
}

TEST_CASE("parallel_for covers the index set exactly") {
    const std::size_t n = 1000;
    std::vector<double> v(n, -1.0);
    csmm::parallel_for(n, [&](std::size_t i) { v[i] = static_cast<double>(i) * static_cast<double>(i); });
    double sum = 0.0;
    for (double x : v) sum += x;
    CHECK_EQ(sum, 332833500.0);
}

}  // TEST_SUITE

}  // namespace
