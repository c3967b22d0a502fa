#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "odds/assignment.hpp"
#include "odds/brent.hpp"
#include "odds/quadrature.hpp"
#include "odds/special_functions.hpp"
#include "odds/spline.hpp"

namespace odds {

namespace detail {

// Log posterior density over (mu, sigma) for standardized data
// (mu_hat = 0, sigma_hat = 1), up to an additive constant:
//   log F = -n log sigma - n (1 + mu^2) / (2 sigma^2) + log prior(sigma)
struct GaussianPosteriorDensity {
    const GaussianPosterior& post;
    double log_scale = 0.0;

    explicit GaussianPosteriorDensity(const GaussianPosterior& p) : post(p) {
        p.validate();
        // peak of the sigma profile sets the normalization scale
        double best = -1e300;
        for (int i = 1; i <= 400; ++i) {
            const double sigma = 8.0 * i / 400.0;
            best = std::max(best, log_unnormalized(0.0, sigma));
        }
        log_scale = best;
    }

    double log_unnormalized(double mu, double sigma) const {
        if (sigma <= 0.0) return -1e300;
        const double pr = post.prior_density(sigma);
        if (pr <= 0.0) return -1e300;
        const double n = static_cast<double>(post.n);
        return -n * std::log(sigma) - n * (1.0 + mu * mu) / (2.0 * sigma * sigma) +
               std::log(pr);
    }

    double operator()(double mu, double sigma) const {
        const double l = log_unnormalized(mu, sigma) - log_scale;
        return l < -700.0 ? 0.0 : std::exp(l);
    }
};

inline Quadrature2DSpec default_gaussian_quad(const GaussianPosterior& post) {
    Quadrature2DSpec spec;
    spec.sigma_truncation = 8.0; // standardized units; posterior mass beyond is < 1e-12
    spec.mu_halfwidth = 8.0 / std::sqrt(static_cast<double>(post.n));
    spec.rel_tolerance = 1e-7;
    return spec;
}

} // namespace detail

struct GaussianOddsDiagnostics {
    double p = 0.0;       // q / s
    double s = 0.0;       // total odds
    double pi_bar = 0.0;  // posterior mean event probability (log utility)
    double alpha = 0.0;   // inflation exponent (log utility)
    bool quad_converged = true;
};

/// Gaussian model, linear utility. The event is E = {Z <= z} in
/// standardized coordinates z = (x - mu_hat) / sigma_hat. Minimizes the
/// total odds s(p) subject to the zero-expected-payout constraint; the
/// inner integrals split the mu range at M(p, z, sigma), the boundary
/// between the regions where the informed client backs E or E'.
inline OddsAssignment gaussian_linear_odds(const GaussianPosterior& post, double z,
                                           const Quadrature2DSpec& quad,
                                           double tol = 1e-6,
                                           GaussianOddsDiagnostics* diag = nullptr) {
    if (!(tol > 0.0)) throw std::invalid_argument("gaussian_linear_odds: tol must be > 0");
    quad.validate();
    const detail::GaussianPosteriorDensity F(post);

    bool all_converged = true;
    auto run2d = [&](auto&& f, auto&& breaks) {
        IntegralResult r = integrate_2d(f, quad, breaks);
        if (!r.converged) all_converged = false;
        return r.value;
    };

    const double C = run2d([&](double mu, double sigma) { return F(mu, sigma); }, nullptr);
    if (!(C > 0.0))
        throw std::runtime_error("gaussian_linear_odds: posterior mass vanished on the domain");

    // s(p) = [ (1/p) int_{mu<M} Phi F + (1/(1-p)) int_{mu>M} (1-Phi) F ] / C
    auto total_odds = [&](double p) {
        const double zp = normal_quantile(p);
        auto cut = [&](double sigma) { return std::vector<double>{z - sigma * zp}; };
        const double bet_e = run2d(
            [&](double mu, double sigma) {
                if (mu >= z - sigma * zp) return 0.0;
                return normal_cdf((z - mu) / sigma) * F(mu, sigma);
            },
            cut);
        const double bet_ec = run2d(
            [&](double mu, double sigma) {
                if (mu < z - sigma * zp) return 0.0;
                return normal_cdf(-(z - mu) / sigma) * F(mu, sigma);
            },
            cut);
        return (bet_e / p + bet_ec / (1.0 - p)) / C;
    };

    constexpr double eps = 1e-7;
    const ScalarMinimum m = minimize_scalar(total_odds, eps, 1.0 - eps, tol);

    OddsAssignment out;
    out.q = {m.argmin * m.min, (1.0 - m.argmin) * m.min};
    out.utility = Utility::linear;
    out.provenance = Provenance::gaussian;
    out.converged = all_converged;
    if (diag) {
        diag->p = m.argmin;
        diag->s = m.min;
        diag->quad_converged = all_converged;
    }
    return out;
}

inline OddsAssignment gaussian_linear_odds(const GaussianPosterior& post, double z,
                                           double tol = 1e-6) {
    return gaussian_linear_odds(post, z, detail::default_gaussian_quad(post), tol);
}

/// Gaussian model, logarithmic utility: q = pi_bar e^alpha with pi_bar
/// and the expected entropy computed by posterior quadrature.
inline OddsAssignment gaussian_log_odds(const GaussianPosterior& post, double z,
                                        const Quadrature2DSpec& quad,
                                        GaussianOddsDiagnostics* diag = nullptr) {
    quad.validate();
    const detail::GaussianPosteriorDensity F(post);

    bool all_converged = true;
    auto run2d = [&](auto&& f) {
        IntegralResult r = integrate_2d(f, quad, nullptr);
        if (!r.converged) all_converged = false;
        return r.value;
    };

    const double C = run2d([&](double mu, double sigma) { return F(mu, sigma); });
    if (!(C > 0.0))
        throw std::runtime_error("gaussian_log_odds: posterior mass vanished on the domain");

    const double pi_bar =
        run2d([&](double mu, double sigma) {
            return normal_cdf((z - mu) / sigma) * F(mu, sigma);
        }) / C;

    const double h_bar =
        run2d([&](double mu, double sigma) {
            const double pi = normal_cdf((z - mu) / sigma);
            double h = 0.0;
            if (pi > 0.0) h += pi * std::log(pi);
            if (pi < 1.0) h += (1.0 - pi) * std::log1p(-pi);
            return h * F(mu, sigma);
        }) / C;

    double entropy_of_mean = 0.0;
    if (pi_bar > 0.0) entropy_of_mean += pi_bar * std::log(pi_bar);
    if (pi_bar < 1.0) entropy_of_mean += (1.0 - pi_bar) * std::log1p(-pi_bar);
    const double alpha = std::max(0.0, h_bar - entropy_of_mean);

    OddsAssignment out;
    const double ea = std::exp(alpha);
    out.q = {pi_bar * ea, (1.0 - pi_bar) * ea};
    out.utility = Utility::logarithmic;
    out.provenance = Provenance::gaussian;
    out.converged = all_converged;
    if (diag) {
        diag->pi_bar = pi_bar;
        diag->alpha = alpha;
        diag->s = ea;
        diag->p = pi_bar;
        diag->quad_converged = all_converged;
    }
    return out;
}

inline OddsAssignment gaussian_log_odds(const GaussianPosterior& post, double z) {
    return gaussian_log_odds(post, z, detail::default_gaussian_quad(post));
}

/// Precomputed q(z), s(z) on a z-grid. The standardized solution is a
/// function of z alone (for fixed n and prior), so repeated lookups
/// interpolate instead of re-running the optimization.
class GaussianOddsCurve {
public:
    GaussianOddsCurve(const GaussianPosterior& post, Utility utility, double z_min = -6.0,
                      double z_max = 6.0, double step = 0.25)
        : GaussianOddsCurve(tabulate(post, utility, z_min, z_max, step), utility, z_min,
                            z_max) {}

    /// Odds for E = {Z <= z}; z is clamped to the tabulated range.
    OddsAssignment at(double z) const {
        const double zc = std::clamp(z, z_min_, z_max_);
        const double q = q_(zc);
        const double s = s_(zc);
        OddsAssignment out;
        out.q = {q, s - q};
        out.utility = utility_;
        out.provenance = Provenance::gaussian;
        return out;
    }

private:
    struct Table {
        std::vector<double> z, q, s;
    };

    static Table tabulate(const GaussianPosterior& post, Utility utility, double z_min,
                          double z_max, double step) {
        Table t;
        GaussianPosterior std_post = post;
        std_post.mu_hat = 0.0;
        std_post.sigma_hat = 1.0;
        for (double z = z_min; z <= z_max + 1e-9; z += step) {
            const OddsAssignment a = utility == Utility::linear
                                         ? gaussian_linear_odds(std_post, z)
                                         : gaussian_log_odds(std_post, z);
            t.z.push_back(z);
            t.q.push_back(a.q[0]);
            t.s.push_back(a.excess_sum());
        }
        return t;
    }

    GaussianOddsCurve(Table t, Utility utility, double z_min, double z_max)
        : z_min_(z_min), z_max_(z_max), utility_(utility), q_(t.z, t.q),
          s_(std::move(t.z), std::move(t.s)) {}

    double z_min_, z_max_;
    Utility utility_;
    CubicSpline q_, s_;
};

/// Exposes the Gaussian posterior through the generic simplex-sampler
/// interface for the event E = {Z <= z}. sigma is drawn from its
/// tabulated marginal (the mu integral is Gaussian and comes out in
/// closed form), then mu | sigma ~ N(0, sigma^2 / n).
inline GenericPosterior gaussian_generic(const GaussianPosterior& post, double z,
                                         double sigma_truncation = 8.0,
                                         int table_size = 4096) {
    post.validate();
    const double n = static_cast<double>(post.n);
    // marginal(sigma) propto prior(sigma) sigma^{1-n} exp(-n / (2 sigma^2))
    auto log_marginal = [&](double sigma) {
        const double pr = post.prior_density(sigma);
        if (pr <= 0.0 || sigma <= 0.0) return -1e300;
        return std::log(pr) + (1.0 - n) * std::log(sigma) - n / (2.0 * sigma * sigma);
    };
    std::vector<double> grid(table_size), cdf(table_size);
    double peak = -1e300;
    for (int i = 0; i < table_size; ++i) {
        grid[i] = sigma_truncation * (i + 0.5) / table_size;
        peak = std::max(peak, log_marginal(grid[i]));
    }
    double acc = 0.0;
    for (int i = 0; i < table_size; ++i) {
        acc += std::exp(log_marginal(grid[i]) - peak);
        cdf[i] = acc;
    }
    for (auto& c : cdf) c /= acc;

    const double sqrt_n = std::sqrt(n);
    return {2, [grid = std::move(grid), cdf = std::move(cdf), z,
                sqrt_n](RngEngine& eng) {
                const double u = eng.uniform();
                const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
                const double sigma = grid[it - cdf.begin()];
                const double mu = eng.normal() * sigma / sqrt_n;
                const double pi = normal_cdf((z - mu) / sigma);
                return std::vector<double>{pi, 1.0 - pi};
            }};
}

} // namespace odds
