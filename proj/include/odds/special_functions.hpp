#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace odds {

/// ln beta(a,b) = lgamma(a) + lgamma(b) - lgamma(a+b).
inline double ln_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("ln_beta: arguments must be positive");
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace detail {

// Continued fraction for the regularized incomplete beta, modified
// Lentz algorithm. Valid for x < (a+1)/(a+b+2).
inline double beta_cf(double x, double a, double b) {
    constexpr int max_iter = 300;
    constexpr double eps = 1e-16;
    constexpr double fpmin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

} // namespace detail

/// Regularized lower incomplete beta I_x(a,b).
inline double incomplete_beta_regularized(double x, double a, double b) {
    if (x < 0.0 || x > 1.0)
        throw std::domain_error("incomplete_beta: x outside [0,1]");
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("incomplete_beta: a,b must be positive");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front =
        a * std::log(x) + b * std::log1p(-x) - ln_beta(a, b);
    if (x < (a + 1.0) / (a + b + 2.0))
        return std::exp(ln_front) * detail::beta_cf(x, a, b) / a;
    return 1.0 - std::exp(ln_front) * detail::beta_cf(1.0 - x, b, a) / b;
}

/// Unregularized lower incomplete beta
/// beta_x(a,b) = int_0^x t^{a-1} (1-t)^{b-1} dt.
inline double incomplete_beta(double x, double a, double b) {
    return incomplete_beta_regularized(x, a, b) * std::exp(ln_beta(a, b));
}

/// Standard normal CDF.
inline double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

namespace detail {

// Acklam's rational approximation for the normal quantile.
inline double norm_quantile_approx(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        const double u = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
               ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    }
    if (p > 1.0 - plow) {
        const double u = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
               ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    }
    const double u = p - 0.5;
    const double t = u * u;
    return (((((a[0] * t + a[1]) * t + a[2]) * t + a[3]) * t + a[4]) * t + a[5]) * u /
           (((((b[0] * t + b[1]) * t + b[2]) * t + b[3]) * t + b[4]) * t + 1.0);
}

} // namespace detail

/// Inverse of normal_cdf, refined with one Halley step.
inline double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("normal_quantile: p must lie in (0,1)");
    double z = detail::norm_quantile_approx(p);
    // Halley refinement against erfc-based CDF
    const double e = normal_cdf(z) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * z * z);
    z -= u / (1.0 + 0.5 * z * u);
    return z;
}

/// Standard normal density.
inline double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

/// Harmonic number H_k = sum_{i=1..k} 1/i, H_0 = 0.
inline double harmonic(long k) {
    if (k < 0) throw std::domain_error("harmonic: k must be >= 0");
    long double sum = 0.0L;
    for (long i = k; i >= 1; --i) sum += 1.0L / static_cast<long double>(i);
    return static_cast<double>(sum);
}

} // namespace odds
