#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

namespace odds {

struct ScalarMinimum {
    double argmin;
    double min;
    int evaluations;
};

/// Brent's parabolic-interpolation minimizer on [lo, hi].
/// Returns a point within tol of a local minimizer; global for unimodal f.
template <class F>
ScalarMinimum minimize_scalar(F&& f, double lo, double hi, double tol) {
    if (!(lo < hi)) throw std::invalid_argument("minimize_scalar: lo < hi required");
    if (!(tol > 0.0)) throw std::invalid_argument("minimize_scalar: tol must be positive");

    constexpr double golden = 0.3819660112501051;
    constexpr int max_iter = 200;

    int evals = 0;
    auto eval = [&](double p) {
        ++evals;
        return f(p);
    };

    double a = lo, b = hi;
    double x = a + golden * (b - a);
    double w = x, v = x;
    double fx = eval(x);
    if (!std::isfinite(fx)) {
        // probe a few interior points before giving up
        bool found = false;
        for (int i = 1; i <= 8 && !found; ++i) {
            const double p = a + (b - a) * i / 9.0;
            const double fp = eval(p);
            if (std::isfinite(fp)) { x = w = v = p; fx = fp; found = true; }
        }
        if (!found)
            throw std::runtime_error("minimize_scalar: f non-finite on all probes");
    }
    double fw = fx, fv = fx;
    double d = 0.0, e = 0.0;

    for (int iter = 0; iter < max_iter; ++iter) {
        const double xm = 0.5 * (a + b);
        const double tol1 = tol * std::fabs(x) + 1e-15;
        const double tol2 = 2.0 * tol1;
        if (std::fabs(x - xm) <= tol2 - 0.5 * (b - a)) break;

        bool use_golden = true;
        if (std::fabs(e) > tol1) {
            // parabolic fit through x, v, w
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::fabs(q);
            const double etemp = e;
            e = d;
            if (std::fabs(p) < std::fabs(0.5 * q * etemp) && p > q * (a - x) &&
                p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2)
                    d = std::copysign(tol1, xm - x);
                use_golden = false;
            }
        }
        if (use_golden) {
            e = (x >= xm) ? a - x : b - x;
            d = golden * e;
        }
        const double u = (std::fabs(d) >= tol1) ? x + d : x + std::copysign(tol1, d);
        const double fu = eval(u);
        if (std::isfinite(fu) && fu <= fx) {
            if (u >= x) a = x; else b = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (!std::isfinite(fu)) continue;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    return {x, fx, evals};
}

} // namespace odds
