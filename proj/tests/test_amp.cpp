#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "csmm/amp.hpp"
#include "csmm/state_evolution.hpp"

namespace {

csmm::Prior standard_prior() { return csmm::DiscretePrior::three_point(0.1, 3.0); }

TEST_SUITE("amp") {

TEST_CASE("instances are deterministic in the seed and dimensioned correctly") {
    const csmm::ProblemInstance a = csmm::generate_instance(400, 100, standard_prior(), 1.0, 11);
    const csmm::ProblemInstance b = csmm::generate_instance(400, 100, standard_prior(), 1.0, 11);
    const csmm::ProblemInstance c = csmm::generate_instance(400, 100, standard_prior(), 1.0, 12);
    CHECK_EQ(a.rows(), 100);
    CHECK_EQ(a.cols(), 400);
    CHECK_EQ(a.delta_actual(), 0.25);
    CHECK_EQ((a.A - b.A).norm(), 0.0);
    CHECK_EQ((a.x0 - b.x0).norm(), 0.0);
    CHECK_EQ((a.y - b.y).norm(), 0.0);
    CHECK_GT((a.A - c.A).norm(), 0.0);
    CHECK_LT(((a.A * a.x0 + a.z) - a.y).norm(), 1e-12);
}

TEST_CASE("zero noise level produces an exactly zero noise vector") {
    const csmm::ProblemInstance inst = csmm::generate_instance(200, 50, standard_prior(), 0.0, 3);
    CHECK(inst.z.isZero(0.0));
}

TEST_CASE("invalid dimensions are rejected") {
    CHECK_THROWS(csmm::generate_instance(100, 100, standard_prior(), 1.0, 1));
    CHECK_THROWS(csmm::generate_instance(100, 0, standard_prior(), 1.0, 1));
}

TEST_CASE("column norms concentrate near one") {
    const csmm::ProblemInstance inst = csmm::generate_instance(1000, 500, standard_prior(), 1.0, 21);
    double lo = 2.0, hi = 0.0;
    for (int j = 0; j < inst.cols(); ++j) {
        const double nrm = inst.A.col(j).norm();
        lo = std::min(lo, nrm);
        hi = std::max(hi, nrm);
    }
    // chi-square concentration: norm sd is about 0.032 at 500 rows, and the
    // extremes over 1000 columns reach 3.5 sd, so gate at 4.5 sd.
    CHECK_GT(lo, 0.85);
    CHECK_LT(hi, 1.15);
}

TEST_CASE("signal draws obey the law of large numbers") {
    const csmm::ProblemInstance inst =
        csmm::generate_instance(10000, 500, standard_prior(), 1.0, 31);
    const double mean_abs = inst.x0.cwiseAbs().mean();
    CHECK_LT(std::abs(mean_abs - 0.3), 4.0 * std::sqrt(0.81 / 10000.0));
    const double noise_var = inst.z.squaredNorm() / inst.rows();
    CHECK_LT(std::abs(noise_var - 1.0), 4.0 * std::sqrt(2.0 / 500.0));
}

TEST_CASE("all-zero data converges immediately to the zero estimate") {
    const csmm::Prior zero = csmm::DiscretePrior::point_mass_at_zero();
    const csmm::ProblemInstance inst = csmm::generate_instance(200, 50, zero, 0.0, 5);
    const csmm::AmpState st = csmm::amp_run(inst, 1.5);
    CHECK(st.converged);
    CHECK_EQ(st.iterations, 1);
    CHECK(st.x_hat.isZero(0.0));
    CHECK_EQ(st.support, 0);
}

TEST_CASE("runs are bit-reproducible") {
    const csmm::ProblemInstance inst = csmm::generate_instance(500, 125, standard_prior(), 1.0, 41);
    const csmm::AmpState a = csmm::amp_run(inst, 1.5);
    const csmm::AmpState b = csmm::amp_run(inst, 1.5);
    CHECK_EQ((a.x_hat - b.x_hat).norm(), 0.0);
    CHECK_EQ(a.iterations, b.iterations);
    CHECK_EQ(a.support, b.support);
}

TEST_CASE("the iteration is covariant under a common rescale") {
    const double a = 8.0;
    csmm::ProblemInstance inst = csmm::generate_instance(500, 125, standard_prior(), 1.0, 51);
    csmm::ProblemInstance scaled = inst;
    scaled.x0 *= a;
    scaled.z *= a;
    scaled.y = scaled.A * scaled.x0 + scaled.z;
    const csmm::AmpState base = csmm::amp_run(inst, 1.5);
    const csmm::AmpState big = csmm::amp_run(scaled, 1.5);
    CHECK(base.converged);
    CHECK(big.converged);
    CHECK_LT((big.x_hat - a * base.x_hat).norm() / (a * base.x_hat.norm()), 1e-6);
}

TEST_CASE("the effective observation looks Gaussian around the signal") {
    const csmm::ProblemInstance inst =
        csmm::generate_instance(4000, 1000, standard_prior(), 1.0, 61);
    const csmm::AmpState st = csmm::amp_run(inst, 1.5);
    REQUIRE(st.converged);
    const Eigen::VectorXd noise = st.x_hat + inst.A.transpose() * st.residual - inst.x0;
    const double m2 = noise.squaredNorm() / noise.size();
    const double m4 = noise.array().pow(4).mean();
    const double kurtosis = m4 / (m2 * m2);
    CHECK_GT(kurtosis, 2.8);
    CHECK_LT(kurtosis, 3.2);
}

TEST_CASE("empirical risk distribution is seed-batch stable") {
    const int trials = 20;
    double mean1 = 0.0, mean2 = 0.0, sq1 = 0.0, sq2 = 0.0;
    for (int i = 0; i < trials; ++i) {
        const csmm::ProblemInstance ia =
            csmm::generate_instance(1000, 250, standard_prior(), 1.0, 100 + i);
        const csmm::ProblemInstance ib =
            csmm::generate_instance(1000, 250, standard_prior(), 1.0, 200 + i);
        const double ma = csmm::empirical_mse(csmm::amp_run(ia, 1.5).x_hat, ia.x0);
        const double mb = csmm::empirical_mse(csmm::amp_run(ib, 1.5).x_hat, ib.x0);
        mean1 += ma;
        mean2 += mb;
        sq1 += ma * ma;
        sq2 += mb * mb;
    }
    mean1 /= trials;
    mean2 /= trials;
    const double se1 = std::sqrt((sq1 / trials - mean1 * mean1) / trials);
    const double se2 = std::sqrt((sq2 / trials - mean2 * mean2) / trials);
    CHECK_LT(std::abs(mean1 - mean2), 3.0 * std::sqrt(se1 * se1 + se2 * se2));
}

TEST_CASE("noise estimate settles once the support stops churning") {
    const csmm::ProblemInstance inst = csmm::generate_instance(1000, 250, standard_prior(), 1.0, 71);
    const csmm::AmpState st = csmm::amp_run(inst, 1.5);
    REQUIRE(st.converged);
    REQUIRE_GT(st.sigma_trace.size(), 8u);
    // The early trace wanders while the active set churns; once converged,
    // the trailing quarter must be flat and the reported estimate must match.
    const std::size_t tail = st.sigma_trace.size() - st.sigma_trace.size() / 4;
    double worst_step = 0.0;
    double lo = st.sigma_trace.back(), hi = lo;
    for (std::size_t t = tail; t < st.sigma_trace.size(); ++t) {
        if (t + 1 < st.sigma_trace.size())
            worst_step = std::max(worst_step,
                                  std::abs(st.sigma_trace[t + 1] - st.sigma_trace[t]));
        lo = std::min(lo, st.sigma_trace[t]);
        hi = std::max(hi, st.sigma_trace[t]);
    }
    CHECK_LT(worst_step, 1e-6 * st.sigma_hat);
    CHECK_LT(hi - lo, 1e-5 * st.sigma_hat);
    CHECK_GE(st.sigma_hat, lo);
    CHECK_LE(st.sigma_hat, hi);
}

TEST_CASE("thresholds below the stable phase are flagged as divergent") {
    const csmm::ProblemInstance inst = csmm::generate_instance(500, 125, standard_prior(), 1.0, 81);
    const csmm::AmpState st = csmm::amp_run(inst, 0.3, 2000);
    CHECK(st.diverged);
    CHECK_FALSE(st.converged);
}

TEST_CASE("a dominating penalty drives the estimate to exactly zero") {
    const csmm::ProblemInstance inst = csmm::generate_instance(500, 125, standard_prior(), 1.0, 91);
    const csmm::AmpLassoResult res = csmm::amp_lasso(inst, 50.0);
    CHECK(res.calibration.valid);
    CHECK(res.state.x_hat.isZero(0.0));
    CHECK_EQ(res.state.support, 0);
}

TEST_CASE("penalty-targeted runs expose the realized penalty") {
    const csmm::ProblemInstance inst =
        csmm::generate_instance(2000, 500, standard_prior(), 1.0, 95);
    const csmm::AmpLassoResult res = csmm::amp_lasso(inst, 1.0, 4000, 1e-10);
    CHECK(res.state.converged);
    CHECK_EQ(res.lambda, 1.0);
    CHECK_GT(res.lambda_hat, 0.0);
    CHECK_LT(std::abs(res.relation_residual - std::abs(res.lambda - res.lambda_hat)), 1e-15);
}

TEST_CASE("mean squared error helper handles the edge cases") {
    Eigen::VectorXd x(3);
    x << 1.0, -2.0, 0.5;
    CHECK_EQ(csmm::empirical_mse(x, x), 0.0);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
    CHECK_LT(std::abs(csmm::empirical_mse(zero, x) - x.squaredNorm() / 3.0), 1e-15);
    Eigen::VectorXd shorter(2);
    shorter << 1.0, 2.0;
    CHECK_THROWS(csmm::empirical_mse(shorter, x));
}

}  // TEST_SUITE

}  // namespace
