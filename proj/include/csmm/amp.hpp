#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "csmm/prior.hpp"
#include "csmm/state_evolution.hpp"

namespace csmm {

// Synthetic sensing problem y = A x0 + z with an iid Gaussian matrix,
// entries Normal(0, 1/n) so column norms concentrate near 1.
struct ProblemInstance {
    Eigen::MatrixXd A;   // n x N
    Eigen::VectorXd x0;  // length N, iid draws from `prior`
    Eigen::VectorXd z;   // length n, iid Normal(0, sigma^2)
    Eigen::VectorXd y;   // A * x0 + z
    Prior prior = DiscretePrior::point_mass_at_zero();
    double sigma = 0.0;
    std::uint64_t seed = 0;

    int rows() const { return static_cast<int>(A.rows()); }
    int cols() const { return static_cast<int>(A.cols()); }
    double delta_actual() const {
        return static_cast<double>(A.rows()) / static_cast<double>(A.cols());
    }
};

// Deterministic given seed; signal, noise and matrix use separate derived
// streams so changing N does not shift the noise draws.
ProblemInstance generate_instance(int N, int n, const Prior& prior, double sigma,
                                  std::uint64_t seed);

struct AmpState {
    Eigen::VectorXd x_hat;
    Eigen::VectorXd residual;         // corrected residual at the last iteration
    std::vector<double> sigma_trace;  // effective noise estimate per iteration
    double sigma_hat = 0.0;           // ||residual|| / sqrt(n)
    double theta = 0.0;               // last threshold applied
    int support = 0;                  // exact nonzero count of x_hat
    int iterations = 0;
    bool converged = false;
    bool diverged = false;
};

// Iterative soft thresholding with the residual memory term
//   r^t = y - A x^t + (||x^t||_0 / n) r^{t-1}
//   x^{t+1} = eta(x^t + A' r^t; tau * ||r^t|| / sqrt(n))
// starting from x^0 = 0.  Divergence is flagged (not thrown) when the noise
// estimate exceeds 1e6 times its initial value.
AmpState amp_run(const ProblemInstance& inst, double tau, int max_iter = 2000,
                 double tol = 1e-8);

struct AmpLassoResult {
    AmpState state;
    Calibration calibration;       // threshold multiplier chosen for this penalty
    double lambda = 0.0;           // requested penalty
    double lambda_hat = 0.0;       // theta * (1 - support/n) at the last iterate
    double relation_residual = 0.0;  // |lambda - lambda_hat|
};

// Penalty-targeted run: the threshold multiplier is calibrated against the
// instance's prior and noise level, then the empirical penalty identity
// lambda = theta * (1 - ||x_hat||_0 / n) is checked at the fixed point.
AmpLassoResult amp_lasso(const ProblemInstance& inst, double lambda,
                         int max_iter = 2000, double tol = 1e-8);

// ||x_hat - x0||^2 / N; lengths must agree.
double empirical_mse(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& x0);

}  // namespace csmm
