#include <doctest.h>

#include <initializer_list>

#include <cmath>

#include "csmm/amp.hpp"
#include "csmm/lasso.hpp"

namespace {

csmm::ProblemInstance small_instance(std::uint64_t seed, double sigma = 1.0) {
    return csmm::generate_instance(200, 50, csmm::DiscretePrior::three_point(0.1, 3.0), sigma,
                                   seed);
}

TEST_SUITE("lasso") {

TEST_CASE("penalties above the gradient bound give the zero solution") {
    const csmm::ProblemInstance inst = small_instance(7);
    const double lambda_max = (inst.A.transpose() * inst.y).cwiseAbs().maxCoeff();
    const csmm::LassoSolution prox = csmm::solve_lasso(inst, lambda_max * 1.001);
    const csmm::LassoSolution cd = csmm::solve_lasso_cd(inst, lambda_max * 1.001);
    CHECK(prox.converged);
    CHECK(cd.converged);
    CHECK(prox.x_hat.isZero(0.0));
    CHECK(cd.x_hat.isZero(0.0));
}

TEST_CASE("proximal and coordinate descent solutions coincide") {
    const csmm::ProblemInstance inst = small_instance(7);
    const double lambda = 0.3 * (inst.A.transpose() * inst.y).cwiseAbs().maxCoeff();
    const csmm::LassoSolution prox = csmm::solve_lasso(inst, lambda);
    const csmm::LassoSolution cd = csmm::solve_lasso_cd(inst, lambda);
    CHECK(prox.converged);
    CHECK(cd.converged);
    CHECK_LT((prox.x_hat - cd.x_hat).norm() / prox.x_hat.norm(), 1e-6);
    CHECK_LT(std::abs(prox.objective / cd.objective - 1.0), 1e-9);
}

TEST_CASE("the two solvers agree on a noise-free instance as well") {
    const csmm::ProblemInstance inst = small_instance(13, 0.0);
    const double lambda = 0.1 * (inst.A.transpose() * inst.y).cwiseAbs().maxCoeff();
    const csmm::LassoSolution prox = csmm::solve_lasso(inst, lambda);
    const csmm::LassoSolution cd = csmm::solve_lasso_cd(inst, lambda);
    CHECK_LT((prox.x_hat - cd.x_hat).norm() / (1.0 + prox.x_hat.norm()), 1e-6);
    CHECK_LT(std::abs(prox.objective / cd.objective - 1.0), 1e-9);
}

TEST_CASE("reported objectives match the cost function") {
    const csmm::ProblemInstance inst = small_instance(7);
    const double lambda = 1.0;
    const csmm::LassoSolution prox = csmm::solve_lasso(inst, lambda);
    CHECK_LT(std::abs(prox.objective - csmm::lasso_objective(inst, prox.x_hat, lambda)), 1e-12);
}

TEST_CASE("solutions satisfy stationarity and perturbations break it") {
    const csmm::ProblemInstance inst = small_instance(7);
    const double lambda = 1.0;
    const csmm::LassoSolution prox = csmm::solve_lasso(inst, lambda);
    REQUIRE(prox.converged);
    const double at_solution = csmm::optimality_residual(inst, prox.x_hat, lambda);
    CHECK_LE(at_solution, 1.5e-10);
    Eigen::VectorXd bumped = prox.x_hat;
    bumped[0] += 0.01;
    CHECK_GT(csmm::optimality_residual(inst, bumped, lambda), 100.0 * (at_solution + 1e-12));
}

TEST_CASE("unaccelerated objective is monotone in the iteration budget") {
    const csmm::ProblemInstance inst = small_instance(7);
    const double lambda = 1.0;
    double prev = csmm::lasso_objective(inst, Eigen::VectorXd::Zero(inst.cols()), lambda);
    for (int budget : {1, 5, 25, 125}) {
        const csmm::LassoSolution sol =
            csmm::solve_lasso(inst, lambda, 1e-16, budget, false);
        CHECK_LE(sol.objective, prev * (1.0 + 1e-12));
        prev = sol.objective;
    }
}

TEST_CASE("acceleration changes the path but not the answer") {
    const csmm::ProblemInstance inst = small_instance(7);
    const double lambda = 1.0;
    const csmm::LassoSolution fast = csmm::solve_lasso(inst, lambda, 1e-10, 100000, true);
    const csmm::LassoSolution plain = csmm::solve_lasso(inst, lambda, 1e-10, 100000, false);
    CHECK(fast.converged);
    CHECK(plain.converged);
    CHECK_LT((fast.x_hat - plain.x_hat).norm() / fast.x_hat.norm(), 1e-6);
}

}  // TEST_SUITE

}  // namespace
