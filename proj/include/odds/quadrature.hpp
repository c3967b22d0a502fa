#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "odds/rng.hpp"

namespace odds {

enum class QuadMethod { adaptive, monte_carlo };

/// Integration domain and budget for the (mu, sigma) posterior integrals:
/// sigma in (0, sigma_truncation], mu in [-mu_halfwidth, mu_halfwidth].
struct Quadrature2DSpec {
    double sigma_truncation;
    double mu_halfwidth;
    double rel_tolerance = 1e-8;
    long max_evaluations = 4'000'000;
    QuadMethod method = QuadMethod::adaptive;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(sigma_truncation > 0.0))
            throw std::invalid_argument("Quadrature2DSpec: sigma_truncation must be > 0");
        if (!(mu_halfwidth > 0.0))
            throw std::invalid_argument("Quadrature2DSpec: mu_halfwidth must be > 0");
        if (!(rel_tolerance > 0.0))
            throw std::invalid_argument("Quadrature2DSpec: rel_tolerance must be > 0");
        if (max_evaluations < 1)
            throw std::invalid_argument("Quadrature2DSpec: max_evaluations must be >= 1");
    }
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
    long evaluations = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1].
inline constexpr double gk_nodes[8] = {
    0.0,
    0.2077849550078985, 0.4058451513773972, 0.5860872354676911,
    0.7415311855993945, 0.8648644233597691, 0.9491079123427585,
    0.9914553711208126};
inline constexpr double gk_wk[8] = {
    0.2094821410847278,
    0.2044329400752989, 0.1903505780647854, 0.1690047266392679,
    0.1406532597155259, 0.1047900103222502, 0.0630920926299786,
    0.0229353220105292};
inline constexpr double gk_wg[4] = {
    0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
    0.1294849661688697};

struct GkPanel {
    double integral;
    double error;
};

template <class F>
GkPanel gk15(F& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(c);
    double ik = gk_wk[0] * f0;
    double ig = gk_wg[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * gk_nodes[i];
        const double fl = f(c - dx);
        const double fr = f(c + dx);
        ik += gk_wk[i] * (fl + fr);
        if (i % 2 == 0) ig += gk_wg[i / 2] * (fl + fr);
    }
    evals += 15;
    return {ik * h, std::fabs((ik - ig) * h)};
}

template <class F>
IntegralResult adapt_1d(F& f, double a, double b, double abs_tol, long budget) {
    struct Seg {
        double a, b, integral, error;
    };
    long evals = 0;
    GkPanel whole = gk15(f, a, b, evals);
    std::vector<Seg> heap{{a, b, whole.integral, whole.error}};
    double total = whole.integral;
    double total_err = whole.error;
    while (total_err > abs_tol && evals + 30 <= budget) {
        // split the segment with the largest error
        std::size_t worst = 0;
        for (std::size_t i = 1; i < heap.size(); ++i)
            if (heap[i].error > heap[worst].error) worst = i;
        Seg s = heap[worst];
        if (s.b - s.a < 1e-14 * (b - a)) break;
        const double m = 0.5 * (s.a + s.b);
        GkPanel left = gk15(f, s.a, m, evals);
        GkPanel right = gk15(f, m, s.b, evals);
        total += left.integral + right.integral - s.integral;
        total_err += left.error + right.error - s.error;
        heap[worst] = {s.a, m, left.integral, left.error};
        heap.push_back({m, s.b, right.integral, right.error});
    }
    return {total, total_err, total_err <= abs_tol, evals};
}

} // namespace detail

/// Adaptive 1D integration of f over [a, b] to absolute tolerance.
template <class F>
IntegralResult integrate_1d(F&& f, double a, double b, double abs_tol,
                            long budget = 1'000'000) {
    return detail::adapt_1d(f, a, b, abs_tol, budget);
}

/// Integrates f(mu, sigma) over sigma in (0, R], mu in [-W, W].
/// `mu_breakpoints`, when given, names interior points of the mu range
/// where the integrand has kinks for a given sigma; the inner
/// integration splits there.
inline IntegralResult integrate_2d(
    const std::function<double(double, double)>& f, const Quadrature2DSpec& spec,
    const std::function<std::vector<double>(double)>& mu_breakpoints = nullptr) {
    spec.validate();
    const double R = spec.sigma_truncation;
    const double W = spec.mu_halfwidth;

    if (spec.method == QuadMethod::monte_carlo) {
        RngEngine eng(RngStream{spec.seed, 0x2d17u});
        const long n = spec.max_evaluations;
        double mean = 0.0, m2 = 0.0;
        for (long i = 0; i < n; ++i) {
            const double sigma = eng.uniform(0.0, R);
            const double mu = eng.uniform(-W, W);
            const double v = f(mu, sigma);
            const double d = v - mean;
            mean += d / static_cast<double>(i + 1);
            m2 += d * (v - mean);
        }
        const double area = R * 2.0 * W;
        const double se = std::sqrt(m2 / (static_cast<double>(n) - 1.0) /
                                    static_cast<double>(n));
        return {mean * area, se * area, true, n};
    }

    long evals = 0;
    const long budget = spec.max_evaluations;
    bool converged = true;

    // first pass: coarse estimate of the magnitude to set absolute tolerances
    auto inner = [&](double sigma, double abs_tol) {
        std::vector<double> cuts{-W, W};
        if (mu_breakpoints) {
            for (double c : mu_breakpoints(sigma))
                if (c > -W && c < W) cuts.insert(cuts.end() - 1, c);
        }
        std::sort(cuts.begin(), cuts.end());
        double val = 0.0, err = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            auto g = [&](double mu) { return f(mu, sigma); };
            const long left = budget - evals;
            if (left < 30) { converged = false; break; }
            IntegralResult r = detail::adapt_1d(
                g, cuts[i], cuts[i + 1],
                abs_tol * (cuts[i + 1] - cuts[i]) / (2.0 * W), left);
            evals += r.evaluations;
            val += r.value;
            err += r.error_estimate;
            if (!r.converged) converged = false;
        }
        return std::pair{val, err};
    };

    // coarse scan over sigma for a scale estimate
    double scale = 0.0;
    for (int i = 1; i <= 16; ++i) {
        const double sigma = R * i / 16.5;
        auto [v, e] = inner(sigma, 1e-2);
        scale = std::max(scale, std::fabs(v));
    }
    if (scale == 0.0) scale = 1.0;
    const double inner_tol = spec.rel_tolerance * scale * 0.1;

    double outer_err_accum = 0.0;
    auto g_sigma = [&](double sigma) {
        auto [v, e] = inner(sigma, inner_tol);
        outer_err_accum += e;
        return v;
    };
    const double lo = R * 1e-8;
    IntegralResult outer = detail::adapt_1d(
        g_sigma, lo, R, spec.rel_tolerance * scale * R, budget);
    outer.evaluations = evals;
    outer.error_estimate += inner_tol * R;
    if (!converged) outer.converged = false;
    const double floor_tol =
        std::max(spec.rel_tolerance * std::fabs(outer.value), 1e-300);
    if (outer.error_estimate > floor_tol && !outer.converged)
        outer.converged = false;
    return outer;
}

} // namespace odds
