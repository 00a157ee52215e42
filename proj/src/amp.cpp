#include "csmm/amp.hpp"

#include <cmath>
#include <stdexcept>

#include "csmm/rng.hpp"
#include "csmm/scalar_risk.hpp"

namespace csmm {

namespace {

constexpr std::uint64_t stream_signal = 0;
constexpr std::uint64_t stream_noise = 1;
constexpr std::uint64_t stream_matrix = 2;

}  // namespace

ProblemInstance generate_instance(int N, int n, const Prior& prior, double sigma,
                                  std::uint64_t seed) {
    if (n < 1 || n >= N) {
        throw std::invalid_argument("generate_instance: need 1 <= n < N");
    }
    if (!(sigma >= 0.0)) {
        throw std::invalid_argument("generate_instance: sigma must be nonnegative");
    }

    ProblemInstance inst;
    inst.prior = prior;
    inst.sigma = sigma;
    inst.seed = seed;

    const std::uint64_t signal_seed = Rng(seed, stream_signal).next_u64();
    const std::vector<double> x0 =
        sample(prior, static_cast<std::size_t>(N), signal_seed);
    inst.x0 = Eigen::Map<const Eigen::VectorXd>(x0.data(), N);

    inst.z = Eigen::VectorXd::Zero(n);
    if (sigma > 0.0) {
        Rng rng(seed, stream_noise);
        for (int i = 0; i < n; ++i) inst.z[i] = sigma * rng.next_normal();
    }

    inst.A.resize(n, N);
    {
        Rng rng(seed, stream_matrix);
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        for (int j = 0; j < N; ++j) {
            for (int i = 0; i < n; ++i) inst.A(i, j) = scale * rng.next_normal();
        }
    }

    inst.y = inst.A * inst.x0 + inst.z;
    return inst;
}

AmpState amp_run(const ProblemInstance& inst, double tau, int max_iter, double tol) {
    if (!(tau >= 0.0)) throw std::invalid_argument("amp_run: tau must be nonnegative");
    if (max_iter < 1) throw std::invalid_argument("amp_run: max_iter must be >= 1");

    const int n = inst.rows();
    const int N = inst.cols();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

    AmpState st;
    st.x_hat = Eigen::VectorXd::Zero(N);
    st.sigma_trace.reserve(static_cast<std::size_t>(std::min(max_iter, 4096)));

    Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd r_prev = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd u(N);
    Eigen::VectorXd x_next(N);
    int support = 0;
    double sigma0 = 0.0;

    for (int t = 0; t < max_iter; ++t) {
        r = inst.y - inst.A * st.x_hat +
            (static_cast<double>(support) / n) * r_prev;
        const double sh = r.norm() * inv_sqrt_n;
        st.sigma_trace.push_back(sh);
        st.sigma_hat = sh;
        st.iterations = t + 1;
        if (t == 0) sigma0 = sh;
        if (sigma0 > 0.0 && sh > 1e6 * sigma0) {
            st.diverged = true;
            break;
        }

        st.theta = tau * sh;
        u.noalias() = inst.A.transpose() * r;
        u += st.x_hat;
        int support_next = 0;
        for (int i = 0; i < N; ++i) {
            const double v = soft_threshold(u[i], st.theta);
            x_next[i] = v;
            if (v != 0.0) ++support_next;
        }

        const double step = (x_next - st.x_hat).norm();
        const bool done = step <= tol * (1.0 + st.x_hat.norm());
        st.x_hat.swap(x_next);
        r_prev.swap(r);
        support = support_next;
        if (done) {
            st.converged = true;
            break;
        }
    }

    st.residual = r_prev;
    st.support = support;
    return st;
}

AmpLassoResult amp_lasso(const ProblemInstance& inst, double lambda, int max_iter,
                         double tol) {
    if (!(lambda > 0.0)) throw std::invalid_argument("amp_lasso: lambda must be positive");

    AmpLassoResult res;
    res.lambda = lambda;
    res.calibration = calibrate_tau(lambda, inst.delta_actual(), inst.sigma, inst.prior);
    res.state = amp_run(inst, res.calibration.tau, max_iter, tol);
    res.lambda_hat = res.state.theta *
                     (1.0 - static_cast<double>(res.state.support) / inst.rows());
    res.relation_residual = std::abs(lambda - res.lambda_hat);
    return res;
}

double empirical_mse(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& x0) {
    if (x_hat.size() != x0.size()) {
        throw std::invalid_argument("empirical_mse: length mismatch");
    }
    if (x0.size() == 0) return 0.0;
    return (x_hat - x0).squaredNorm() / static_cast<double>(x0.size());
}

}  // namespace csmm
