#pragma once

#include <Eigen/Dense>

#include "csmm/amp.hpp"

namespace csmm {

struct LassoSolution {
    Eigen::VectorXd x_hat;
    double objective = 0.0;  // 0.5 ||y - A x||^2 + lambda ||x||_1
    double residual = 0.0;   // stationarity violation at exit
    int iterations = 0;
    bool converged = false;
};

double lasso_objective(const ProblemInstance& inst, const Eigen::VectorXd& x,
                       double lambda);

// Max over coordinates of the subgradient violation: |a_j'(y - A x) - lambda
// sign(x_j)| where x_j != 0, max(0, |a_j'(y - A x)| - lambda) where x_j == 0.
double optimality_residual(const ProblemInstance& inst, const Eigen::VectorXd& x_hat,
                           double lambda);

// Proximal gradient with step 1/L, L the squared top singular value from power
// iteration.  accelerate=false keeps the plain iteration, whose objective is
// monotone nonincreasing; accelerate=true adds momentum.  Stops when the
// stationarity violation drops to tol; non-convergence is reported through the
// flag and residual, not thrown.
LassoSolution solve_lasso(const ProblemInstance& inst, double lambda,
                          double tol = 1e-10, int max_iter = 100000,
                          bool accelerate = true);

// Cyclic coordinate descent over exact single-coordinate minimizations.
// Shares no iteration machinery with solve_lasso so the two can arbitrate.
LassoSolution solve_lasso_cd(const ProblemInstance& inst, double lambda,
                             double tol = 1e-10, int max_iter = 100000);

}  // namespace csmm
