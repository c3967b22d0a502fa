#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "odds/assignment.hpp"
#include "odds/brent.hpp"
#include "odds/rng.hpp"

namespace odds {

namespace detail {

inline void check_simplex_sample(const std::vector<double>& pi, std::size_t m) {
    if (pi.size() != m)
        throw std::invalid_argument("generic odds: sampler dimension mismatch");
    double sum = 0.0;
    for (double v : pi) {
        if (v < -1e-12) throw std::invalid_argument("generic odds: negative simplex component");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("generic odds: sample off the simplex");
}

// Lowest index wins on ties; region boundaries carry no posterior mass.
inline std::size_t argmax_ratio(const std::vector<double>& pi,
                                const std::vector<double>& q) {
    std::size_t best = 0;
    double best_ratio = pi[0] / q[0];
    for (std::size_t i = 1; i < pi.size(); ++i) {
        const double r = pi[i] / q[i];
        if (r > best_ratio) {
            best = i;
            best_ratio = r;
        }
    }
    return best;
}

} // namespace detail

/// Log-utility odds from an arbitrary simplex posterior, by Monte Carlo:
/// q_i = pi_bar_i e^alpha with alpha = H_bar - sum pi_bar_i log pi_bar_i.
/// Standard errors are batch-means estimates over 10 batches.
inline OddsAssignment generic_log_odds(const GenericPosterior& post, long mc_samples,
                                       RngStream rng) {
    if (mc_samples < 1000)
        throw std::invalid_argument("generic_log_odds: mc_samples must be >= 1000");
    const std::size_t m = post.m;
    constexpr int n_batches = 10;
    const long per_batch = mc_samples / n_batches;

    std::vector<std::vector<double>> batch_q(n_batches);
    std::vector<double> pi_bar(m, 0.0);
    double h_bar = 0.0;

    for (int b = 0; b < n_batches; ++b) {
        RngEngine eng(rng.derive(static_cast<std::uint64_t>(b)));
        std::vector<double> bp(m, 0.0);
        double bh = 0.0;
        for (long k = 0; k < per_batch; ++k) {
            const std::vector<double> pi = post.sampler(eng);
            detail::check_simplex_sample(pi, m);
            for (std::size_t i = 0; i < m; ++i) {
                bp[i] += pi[i];
                if (pi[i] > 0.0) bh += pi[i] * std::log(pi[i]);
            }
        }
        for (auto& v : bp) v /= static_cast<double>(per_batch);
        bh /= static_cast<double>(per_batch);
        double ent = 0.0;
        for (double v : bp)
            if (v > 0.0) ent += v * std::log(v);
        const double alpha_b = std::max(0.0, bh - ent);
        batch_q[b].resize(m);
        for (std::size_t i = 0; i < m; ++i) batch_q[b][i] = bp[i] * std::exp(alpha_b);
        for (std::size_t i = 0; i < m; ++i) pi_bar[i] += bp[i];
        h_bar += bh;
    }
    for (auto& v : pi_bar) v /= n_batches;
    h_bar /= n_batches;

    double ent = 0.0;
    for (double v : pi_bar)
        if (v > 0.0) ent += v * std::log(v);
    const double alpha = std::max(0.0, h_bar - ent);

    OddsAssignment out;
    out.q.resize(m);
    out.std_errors.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        out.q[i] = pi_bar[i] * std::exp(alpha);
        double var = 0.0;
        for (int b = 0; b < n_batches; ++b) {
            const double d = batch_q[b][i] - out.q[i];
            var += d * d;
        }
        out.std_errors[i] = std::sqrt(var / (n_batches * (n_batches - 1.0)));
    }
    out.utility = Utility::logarithmic;
    out.provenance = Provenance::generic;
    return out;
}

struct GenericLinearDiagnostics {
    double constraint_std_error = 0.0;
    double s = 0.0;
    int passes = 0;
};

/// Linear-utility odds from an arbitrary simplex posterior. One fixed
/// Monte Carlo sample set is reused across all q (common random
/// numbers); for a direction p on the simplex the betting regions are
/// scale-free, so the zero-payout constraint fixes the scale in closed
/// form: s(p) = sum_i A_i(p) / p_i with A_i the region-restricted mean
/// of pi_i. The outer search minimizes s(p) by coordinate descent.
inline OddsAssignment generic_linear_odds(const GenericPosterior& post, long mc_samples,
                                          RngStream rng, double tol = 1e-6,
                                          GenericLinearDiagnostics* diag = nullptr) {
    if (post.m < 2) throw std::invalid_argument("generic_linear_odds: m must be >= 2");
    if (mc_samples < 1000)
        throw std::invalid_argument("generic_linear_odds: mc_samples must be >= 1000");
    const std::size_t m = post.m;

    RngEngine eng(rng);
    std::vector<std::vector<double>> samples;
    samples.reserve(mc_samples);
    for (long k = 0; k < mc_samples; ++k) {
        std::vector<double> pi = post.sampler(eng);
        detail::check_simplex_sample(pi, m);
        samples.push_back(std::move(pi));
    }

    auto total_odds = [&](const std::vector<double>& p) {
        std::vector<double> region_mean(m, 0.0);
        for (const auto& pi : samples) {
            const std::size_t i = detail::argmax_ratio(pi, p);
            region_mean[i] += pi[i];
        }
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            s += region_mean[i] / (static_cast<double>(mc_samples) * p[i]);
        return s;
    };

    // start from the posterior mean direction
    std::vector<double> p(m, 0.0);
    for (const auto& pi : samples)
        for (std::size_t i = 0; i < m; ++i) p[i] += pi[i];
    {
        double sum = 0.0;
        for (double v : p) sum += v;
        for (auto& v : p) v = std::max(v / sum, 1e-6);
    }

    constexpr double eps = 1e-6;
    double s = total_odds(p);
    int pass = 0;
    const int max_passes = m == 2 ? 1 : 60;
    for (; pass < max_passes; ++pass) {
        const double s_before = s;
        for (std::size_t j = 0; j < m; ++j) {
            // vary p_j against the rest, keeping the others' ratios fixed
            auto line = [&](double t) {
                std::vector<double> cand = p;
                cand[j] = t;
                double sum = 0.0;
                for (double v : cand) sum += v;
                for (auto& v : cand) v = std::max(v / sum, eps);
                return total_odds(cand);
            };
            const ScalarMinimum mres = minimize_scalar(line, eps, 4.0, tol);
            std::vector<double> cand = p;
            cand[j] = mres.argmin;
            double sum = 0.0;
            for (double v : cand) sum += v;
            for (auto& v : cand) v = std::max(v / sum, eps);
            if (mres.min < s) {
                p = cand;
                s = mres.min;
            }
        }
        if (m == 2 || std::fabs(s_before - s) < tol) { ++pass; break; }
    }

    OddsAssignment out;
    out.q.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.q[i] = p[i] * s;
    out.utility = Utility::linear;
    out.provenance = Provenance::generic;

    // standard error of the per-sample payout ratio under the final odds
    double mean = 0.0, m2 = 0.0;
    long k = 0;
    for (const auto& pi : samples) {
        const std::size_t i = detail::argmax_ratio(pi, out.q);
        const double v = pi[i] / out.q[i];
        ++k;
        const double d = v - mean;
        mean += d / static_cast<double>(k);
        m2 += d * (v - mean);
    }
    const double se = std::sqrt(m2 / (static_cast<double>(mc_samples) - 1.0) /
                                static_cast<double>(mc_samples));
    out.std_errors.assign(m, se);
    if (diag) {
        diag->constraint_std_error = se;
        diag->s = s;
        diag->passes = pass;
    }
    return out;
}

/// Beta(x+1, n-x+1) posterior of the two-event frequency model, exposed
/// through the generic sampler interface.
inline GenericPosterior bernoulli_generic(const BernoulliPosterior& post) {
    const double a = static_cast<double>(post.x) + 1.0;
    const double b = static_cast<double>(post.n - post.x) + 1.0;
    return {2, [a, b](RngEngine& eng) {
                const double pi = eng.beta(a, b);
                return std::vector<double>{pi, 1.0 - pi};
            }};
}

} // namespace odds
