#pragma once

#include <cmath>
#include <stdexcept>

#include "odds/assignment.hpp"
#include "odds/brent.hpp"
#include "odds/special_functions.hpp"

namespace odds {

namespace detail {

// One-dimensional objective for the frequency/linear odds: total odds
// s(p) expressed with regularized incomplete betas so it stays finite
// for large n. The exact beta-function prefactors reduce to
// (n-x+1)/(n+2) and (x+1)/(n+2).
inline double freq_linear_total_odds(double p, long x, long n) {
    const double a = static_cast<double>(x) + 1.0;
    const double b = static_cast<double>(n - x) + 1.0;
    const double c1 = b / (static_cast<double>(n) + 2.0);
    const double c2 = a / (static_cast<double>(n) + 2.0);
    const double t1 = incomplete_beta_regularized(p, a, b + 1.0) * c1 / (1.0 - p);
    const double t2 = incomplete_beta_regularized(1.0 - p, b, a + 1.0) * c2 / p;
    return t1 + t2;
}

} // namespace detail

/// Frequency model, linear utility: minimizes the one-dimensional total
/// odds s(p) and returns q = p s, q' = (1-p) s.
inline OddsAssignment freq_linear_odds(const BernoulliPosterior& post,
                                       double tol = 1e-10) {
    if (!(tol > 0.0)) throw std::invalid_argument("freq_linear_odds: tol must be > 0");
    const long x = post.x, n = post.n;
    constexpr double eps = 1e-9; // the incomplete-beta terms vanish at the ends
    auto objective = [&](double p) { return detail::freq_linear_total_odds(p, x, n); };
    const ScalarMinimum m = minimize_scalar(objective, eps, 1.0 - eps, tol);
    OddsAssignment out;
    out.q = {m.argmin * m.min, (1.0 - m.argmin) * m.min};
    out.utility = Utility::linear;
    out.provenance = Provenance::frequency;
    return out;
}

/// Frequency model, logarithmic utility: closed form built from
/// harmonic numbers.
inline OddsAssignment freq_log_odds(const BernoulliPosterior& post) {
    const double a = static_cast<double>(post.x) + 1.0;       // x+1
    const double b = static_cast<double>(post.n - post.x) + 1.0; // n-x+1
    const double n2 = static_cast<double>(post.n) + 2.0;
    const double psi = (a / n2) * harmonic(post.x + 1) +
                       (b / n2) * harmonic(post.n - post.x + 1) -
                       harmonic(post.n + 2);
    const double e_psi = std::exp(psi);
    OddsAssignment out;
    out.q = {std::pow(a / b, b / n2) * e_psi, std::pow(b / a, a / n2) * e_psi};
    out.utility = Utility::logarithmic;
    out.provenance = Provenance::frequency;
    return out;
}

} // namespace odds
