#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "odds/rng.hpp"

namespace odds {

enum class Utility { linear, logarithmic };

enum class Provenance { frequency, gaussian, probabilistic, capped_probabilistic, generic };

/// Non-negative odds q_i over m mutually exclusive events. A unit bet on
/// event i pays 1/q_i - 1 if it occurs, -1 otherwise.
struct OddsAssignment {
    std::vector<double> q;
    Utility utility = Utility::linear;
    Provenance provenance = Provenance::generic;
    bool converged = true;
    std::vector<double> std_errors; // Monte Carlo paths only

    std::size_t size() const { return q.size(); }

    /// Total odds s = sum q_i; s - 1 is the excess.
    double excess_sum() const {
        double s = 0.0;
        for (double v : q) s += v;
        return s;
    }

    /// Pay-out of a winning unit bet on event i.
    double payout(std::size_t i) const { return 1.0 / q[i] - 1.0; }
};

/// Event E observed x times in n trials, uniform prior on pi.
struct BernoulliPosterior {
    long x;
    long n;

    BernoulliPosterior(long x_, long n_) : x(x_), n(n_) {
        if (n < 0 || x < 0 || x > n)
            throw std::invalid_argument("BernoulliPosterior: require 0 <= x <= n");
    }
};

enum class SigmaPrior { chi_2dof, half_normal, custom };

/// Gaussian model summary: n observations with sample mean mu_hat and
/// population (divisor n) standard deviation sigma_hat, plus a prior on
/// sigma with the given scale.
struct GaussianPosterior {
    double mu_hat;
    double sigma_hat;
    long n;
    SigmaPrior sigma_prior = SigmaPrior::chi_2dof;
    double prior_scale = 1.0;
    std::function<double(double)> custom_prior; // density of sigma, custom only

    void validate() const {
        if (!(sigma_hat > 0.0))
            throw std::invalid_argument("GaussianPosterior: sigma_hat must be > 0");
        if (n < 1)
            throw std::invalid_argument("GaussianPosterior: n must be >= 1");
        if (sigma_prior == SigmaPrior::custom && !custom_prior)
            throw std::invalid_argument("GaussianPosterior: custom prior requires a density");
    }

    /// Prior density over sigma (mu prior is uniform).
    double prior_density(double sigma) const {
        if (sigma <= 0.0) return 0.0;
        const double t = sigma / prior_scale;
        switch (sigma_prior) {
            case SigmaPrior::chi_2dof:   return t * std::exp(-0.5 * t * t);
            case SigmaPrior::half_normal: return std::exp(-0.5 * t * t);
            case SigmaPrior::custom:     return custom_prior(sigma);
        }
        return 0.0;
    }
};

/// Posterior known only through a sampler producing points on the
/// probability simplex.
struct GenericPosterior {
    std::size_t m;
    std::function<std::vector<double>(RngEngine&)> sampler;
};

/// Probabilities used directly as odds, optionally floored (floor > 0
/// caps the pay-out at 1/floor - 1).
inline OddsAssignment probabilistic_odds(const std::vector<double>& p_hat,
                                         double floor = 0.0) {
    if (p_hat.size() < 2)
        throw std::invalid_argument("probabilistic_odds: need at least 2 events");
    if (!(floor >= 0.0) || floor >= 1.0)
        throw std::invalid_argument("probabilistic_odds: floor must lie in [0,1)");
    double sum = 0.0;
    for (double p : p_hat) {
        if (p < 0.0) throw std::invalid_argument("probabilistic_odds: negative probability");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("probabilistic_odds: probabilities must sum to 1");
    OddsAssignment out;
    out.q.reserve(p_hat.size());
    for (double p : p_hat) out.q.push_back(std::max(p, floor));
    out.provenance = floor == 0.0 ? Provenance::probabilistic
                                  : Provenance::capped_probabilistic;
    return out;
}

} // namespace odds
