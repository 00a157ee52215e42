#include <doctest.h>

#include <csmm/acceptance.hpp>

// The acceptance criteria compare analytic formulas against independent
// estimates (Monte Carlo draws, simulation at finite size). If that cross
// check is real, corrupting the analytic side must flip the verdict.

namespace {

TEST_SUITE("mutation") {

TEST_CASE("an inflated scalar risk formula is caught by the Monte Carlo check") {
    auto hooks = csmm::AcceptanceHooks::defaults();
    const auto base = hooks.scalar_mse;
    hooks.scalar_mse = [base](double mu, double tau) { return 1.1 * base(mu, tau); };
    CHECK_FALSE(csmm::run_criterion("A1", hooks).pass);
}

TEST_CASE("a biased fixed-point prediction is caught by the matrix simulation") {
    auto hooks = csmm::AcceptanceHooks::defaults();
    const auto base = hooks.scalar_mse;
    hooks.scalar_mse = [base](double mu, double tau) { return 1.1 * base(mu, tau); };
    CHECK_FALSE(csmm::run_criterion("A5", hooks).pass);
}

TEST_CASE("the unmodified formula passes the same check") {
    CHECK(csmm::run_criterion("A1", csmm::AcceptanceHooks::defaults()).pass);
}

}  // TEST_SUITE

}  // namespace
