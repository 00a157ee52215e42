#include "csmm/prior.hpp"

#include <cmath>
#include <stdexcept>
#include <type_traits>

#include "csmm/normal.hpp"
#include "csmm/quadrature.hpp"
#include "csmm/rng.hpp"
#include "csmm/scalar_risk.hpp"
#include "csmm/weak_risk.hpp"

namespace csmm {

DiscretePrior::DiscretePrior(std::vector<double> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
    if (atoms_.empty() || atoms_.size() != weights_.size())
        throw std::invalid_argument("DiscretePrior: atoms and weights must match and be nonempty");
    double total = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0)) throw std::invalid_argument("DiscretePrior: weights must be positive");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("DiscretePrior: weights must sum to one");
}

DiscretePrior DiscretePrior::three_point(double eps, double mu) {
    if (eps < 0.0 || eps > 1.0)
        throw std::invalid_argument("three_point: eps must lie in [0, 1]");
    if (mu < 0.0) throw std::invalid_argument("three_point: mu must be >= 0");
    if (eps == 0.0 || mu == 0.0) return DiscretePrior({0.0}, {1.0});
    if (eps == 1.0) return DiscretePrior({mu, -mu}, {0.5, 0.5});
    return DiscretePrior({0.0, mu, -mu}, {1.0 - eps, 0.5 * eps, 0.5 * eps});
}

double DiscretePrior::moment(double p) const {
    double m = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        m += weights_[i] * std::pow(std::abs(atoms_[i]), p);
    return m;
}

double DiscretePrior::second_moment() const {
    double m = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        m += weights_[i] * atoms_[i] * atoms_[i];
    return m;
}

double DiscretePrior::nonzero_mass() const {
    double m = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (atoms_[i] != 0.0) m += weights_[i];
    return m;
}

double prior_mse(double noise_var, const Prior& prior, double tau) {
    if (!(noise_var > 0.0))
        throw std::invalid_argument("prior_mse: noise_var must be positive");
    const double s = std::sqrt(noise_var);
    return std::visit(
        [&](const auto& nu) -> double {
            using T = std::decay_t<decltype(nu)>;
            if constexpr (std::is_same_v<T, DiscretePrior>) {
                double r = 0.0;
                for (std::size_t i = 0; i < nu.atoms().size(); ++i)
                    r += nu.weights()[i] * soft_threshold_mse(nu.atoms()[i] / s, tau);
                return noise_var * r;
            } else {
                return noise_var * weak_lf_mse(nu.p, nu.xi / s, tau);
            }
        },
        prior);
}

double exceedance(const Prior& prior, double s, double tau) {
    if (!(s > 0.0)) throw std::invalid_argument("exceedance: s must be positive");
    return std::visit(
        [&](const auto& nu) -> double {
            using T = std::decay_t<decltype(nu)>;
            if constexpr (std::is_same_v<T, DiscretePrior>) {
                double e = 0.0;
                for (std::size_t i = 0; i < nu.atoms().size(); ++i) {
                    const double a = nu.atoms()[i] / s;
                    e += nu.weights()[i] * (normal_cdf(a - tau) + normal_cdf(-a - tau));
                }
                return e;
            } else {
                // Survival probability under the most dispersed law, in log
                // magnitude; past x_cut the indicator is 1 up to Gaussian
                // tail mass below 1e-20.
                const double x_cut = std::max(nu.xi, s * (tau + 10.0));
                const double lxi = std::log(nu.xi);
                double e = 0.0;
                if (x_cut > nu.xi) {
                    e = integrate(
                        [&](double u) {
                            const double a = std::exp(u) / s;
                            return nu.p * std::exp(nu.p * (lxi - u)) *
                                   (normal_cdf(a - tau) + normal_cdf(-a - tau));
                        },
                        lxi, std::log(x_cut), 1e-12);
                }
                return e + std::exp(nu.p * (lxi - std::log(x_cut)));
            }
        },
        prior);
}

double scale_hint(const Prior& prior) {
    return std::visit(
        [](const auto& nu) -> double {
            using T = std::decay_t<decltype(nu)>;
            if constexpr (std::is_same_v<T, DiscretePrior>)
                return nu.second_moment();
            else
                return nu.xi * nu.xi;
        },
        prior);
}

std::vector<double> sample(const Prior& prior, std::size_t count, std::uint64_t seed) {
    return std::visit(
        [&](const auto& nu) -> std::vector<double> {
            using T = std::decay_t<decltype(nu)>;
            if constexpr (std::is_same_v<T, DiscretePrior>) {
                std::vector<double> out(count);
                Rng rng(seed);
                for (auto& v : out) {
                    const double u = rng.next_unit();
                    double acc = 0.0;
                    v = nu.atoms().back();
                    for (std::size_t i = 0; i < nu.atoms().size(); ++i) {
                        acc += nu.weights()[i];
                        if (u <= acc) {
                            v = nu.atoms()[i];
                            break;
                        }
                    }
                }
                return out;
            } else {
                return sample_weak(nu.p, nu.xi, count, seed);
            }
        },
        prior);
}

} // namespace csmm
