#pragma once

#include <cstdint>
#include <variant>
#include <vector>

namespace csmm {

// Finitely supported signal distribution. Weights are positive and sum to
// one within 1e-12; atoms need not be symmetric.
class DiscretePrior {
  public:
    DiscretePrior(std::vector<double> atoms, std::vector<double> weights);

    // (1 - eps) delta_0 + eps/2 delta_{+mu} + eps/2 delta_{-mu}, with the
    // degenerate cases eps = 0 and mu = 0 collapsed to a point mass.
    static DiscretePrior three_point(double eps, double mu);

    static DiscretePrior point_mass_at_zero() { return three_point(0.0, 0.0); }

    const std::vector<double>& atoms() const { return atoms_; }
    const std::vector<double>& weights() const { return weights_; }

    double moment(double p) const;        // E |X|^p
    double second_moment() const;
    double nonzero_mass() const;          // P{X != 0}

  private:
    std::vector<double> atoms_;
    std::vector<double> weights_;
};

// Tail-parameterized heavy-tailed law: the most dispersed distribution in
// the weak-lp ball of radius xi. Its second moment is infinite for p < 2.
struct WeakLpPrior {
    double p = 1.0;
    double xi = 1.0;
};

using Prior = std::variant<DiscretePrior, WeakLpPrior>;

// Risk of soft thresholding X + sqrt(noise_var) * Z at threshold
// tau * sqrt(noise_var). Scale covariant: evaluated by reducing the prior
// to unit noise. noise_var must be positive.
double prior_mse(double noise_var, const Prior& prior, double tau);

// P{ |X + s Z| >= tau * s } for s > 0: the asymptotic fraction of
// coordinates surviving the threshold.
double exceedance(const Prior& prior, double s, double tau);

// Finite magnitude scale for seeding fixed-point searches. Not a moment:
// for heavy-tailed priors it is only an order-of-magnitude proxy.
double scale_hint(const Prior& prior);

// iid draws, deterministic in (seed, count).
std::vector<double> sample(const Prior& prior, std::size_t count, std::uint64_t seed);

} // namespace csmm
