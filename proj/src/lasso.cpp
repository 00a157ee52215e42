#include "csmm/lasso.hpp"

#include <cmath>
#include <stdexcept>

#include "csmm/rng.hpp"
#include "csmm/scalar_risk.hpp"

namespace csmm {

namespace {

// Largest eigenvalue of A'A.  Power iteration approaches from below, so the
// result is nudged up to keep a 1/L gradient step conservative.
double top_gram_eigenvalue(const Eigen::MatrixXd& A) {
    const int N = static_cast<int>(A.cols());
    Rng rng(0x1f123bb5u, 7);
    Eigen::VectorXd v(N);
    for (int i = 0; i < N; ++i) v[i] = rng.next_normal();
    v.normalize();

    double eig = 0.0;
    Eigen::VectorXd w;
    for (int it = 0; it < 10000; ++it) {
        w.noalias() = A.transpose() * (A * v);
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        const double eig_next = v.dot(w);
        v = w / nw;
        if (it > 0 && std::abs(eig_next - eig) <= 1e-8 * std::abs(eig_next)) {
            eig = eig_next;
            break;
        }
        eig = eig_next;
    }
    return eig * (1.0 + 1e-6);
}

void check_lasso_args(double lambda, int max_iter) {
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("lasso: lambda must be positive");
    }
    if (max_iter < 1) {
        throw std::invalid_argument("lasso: max_iter must be >= 1");
    }
}

}  // namespace

double lasso_objective(const ProblemInstance& inst, const Eigen::VectorXd& x,
                       double lambda) {
    if (x.size() != inst.A.cols()) {
        throw std::invalid_argument("lasso_objective: length mismatch");
    }
    return 0.5 * (inst.y - inst.A * x).squaredNorm() +
           lambda * x.lpNorm<1>();
}

double optimality_residual(const ProblemInstance& inst, const Eigen::VectorXd& x_hat,
                           double lambda) {
    if (x_hat.size() != inst.A.cols()) {
        throw std::invalid_argument("optimality_residual: length mismatch");
    }
    const Eigen::VectorXd g = inst.A.transpose() * (inst.y - inst.A * x_hat);
    double worst = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        const double v = (x_hat[i] != 0.0)
                             ? std::abs(g[i] - lambda * (x_hat[i] > 0.0 ? 1.0 : -1.0))
                             : std::max(0.0, std::abs(g[i]) - lambda);
        worst = std::max(worst, v);
    }
    return worst;
}

LassoSolution solve_lasso(const ProblemInstance& inst, double lambda, double tol,
                          int max_iter, bool accelerate) {
    check_lasso_args(lambda, max_iter);
    const int N = inst.cols();

    LassoSolution sol;
    sol.x_hat = Eigen::VectorXd::Zero(N);

    const double L = top_gram_eigenvalue(inst.A);
    if (L <= 0.0) {
        // Zero operator: the penalty alone decides, and the minimizer is 0.
        sol.objective = 0.5 * inst.y.squaredNorm();
        sol.converged = true;
        return sol;
    }
    const double step = 1.0 / L;

    Eigen::VectorXd x = sol.x_hat;
    Eigen::VectorXd x_prev = x;
    Eigen::VectorXd point(N);
    Eigen::VectorXd grad(N);
    double momentum = 1.0;

    for (int it = 1; it <= max_iter; ++it) {
        if (accelerate && it > 1) {
            const double momentum_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
            const double beta = (momentum - 1.0) / momentum_next;
            momentum = momentum_next;
            point = x + beta * (x - x_prev);
        } else {
            point = x;
        }

        grad.noalias() = inst.A.transpose() * (inst.A * point - inst.y);
        x_prev = x;
        for (int i = 0; i < N; ++i) {
            x[i] = soft_threshold(point[i] - step * grad[i], step * lambda);
        }

        sol.iterations = it;
        sol.residual = optimality_residual(inst, x, lambda);
        if (sol.residual <= tol) {
            sol.converged = true;
            break;
        }
    }

    sol.x_hat = x;
    sol.objective = lasso_objective(inst, x, lambda);
    return sol;
}

LassoSolution solve_lasso_cd(const ProblemInstance& inst, double lambda, double tol,
                             int max_iter) {
    check_lasso_args(lambda, max_iter);
    const int N = inst.cols();

    LassoSolution sol;
    sol.x_hat = Eigen::VectorXd::Zero(N);

    Eigen::VectorXd col_sq(N);
    for (int j = 0; j < N; ++j) col_sq[j] = inst.A.col(j).squaredNorm();

    Eigen::VectorXd x = Eigen::VectorXd::Zero(N);
    Eigen::VectorXd r = inst.y;  // y - A x, maintained incrementally

    for (int sweep = 1; sweep <= max_iter; ++sweep) {
        for (int j = 0; j < N; ++j) {
            if (col_sq[j] == 0.0) continue;
            const double old = x[j];
            const double rho = inst.A.col(j).dot(r) + col_sq[j] * old;
            const double next = soft_threshold(rho, lambda) / col_sq[j];
            if (next != old) {
                r.noalias() -= inst.A.col(j) * (next - old);
                x[j] = next;
            }
        }

        sol.iterations = sweep;
        sol.residual = optimality_residual(inst, x, lambda);
        if (sol.residual <= tol) {
            sol.converged = true;
            break;
        }
        if (sweep % 64 == 0) {
            r = inst.y - inst.A * x;  // shed accumulated update roundoff
        }
    }

    sol.x_hat = x;
    sol.objective = lasso_objective(inst, x, lambda);
    return sol;
}

}  // namespace csmm
