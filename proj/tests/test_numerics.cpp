#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "odds/brent.hpp"
#include "odds/quadrature.hpp"
#include "odds/rng.hpp"
#include "odds/special_functions.hpp"
#include "odds/spline.hpp"

using namespace odds;

// ---------------------------------------------------------------------------
// special functions
// ---------------------------------------------------------------------------

TEST_CASE("ln_beta matches an independently computed value") {
    CHECK(ln_beta(5.5, 2.5) == Catch::Approx(-4.282664522973779).epsilon(1e-13));
    CHECK(ln_beta(1.0, 1.0) == Catch::Approx(0.0).margin(1e-14));
    CHECK_THROWS_AS(ln_beta(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(ln_beta(2.0, -1.0), std::domain_error);
}

TEST_CASE("incomplete beta against quadrature-derived values") {
    CHECK(incomplete_beta_regularized(0.3, 2.0, 4.0) ==
          Catch::Approx(0.47178).epsilon(1e-10));
    CHECK(incomplete_beta(0.3, 2.0, 4.0) == Catch::Approx(0.023589).epsilon(1e-10));
    CHECK(incomplete_beta_regularized(0.9, 0.5, 7.0) ==
          Catch::Approx(0.9999999780702157).epsilon(1e-12));

    // trapezoid oracle on a fresh case
    const double a = 3.3, b = 1.7, x = 0.62;
    double acc = 0.0;
    const int steps = 2'000'000;
    for (int i = 0; i < steps; ++i) {
        const double t0 = x * i / steps, t1 = x * (i + 1) / steps;
        auto g = [&](double t) {
            return t <= 0.0 ? 0.0 : std::pow(t, a - 1.0) * std::pow(1.0 - t, b - 1.0);
        };
        acc += 0.5 * (g(t0) + g(t1)) * (t1 - t0);
    }
    CHECK(incomplete_beta(x, a, b) == Catch::Approx(acc).epsilon(1e-8));
}

TEST_CASE("incomplete beta properties") {
    SECTION("monotone in x") {
        double prev = 0.0;
        for (int i = 1; i <= 50; ++i) {
            const double v = incomplete_beta_regularized(i / 50.0, 2.5, 3.5);
            CHECK(v >= prev);
            prev = v;
        }
        CHECK(prev == Catch::Approx(1.0).margin(1e-14));
    }
    SECTION("complement identity") {
        for (double x : {0.01, 0.2, 0.5, 0.73, 0.99})
            for (double a : {0.4, 1.0, 3.0, 11.0})
                for (double b : {0.7, 2.0, 9.0}) {
                    const double lhs = incomplete_beta_regularized(x, a, b) +
                                       incomplete_beta_regularized(1.0 - x, b, a);
                    CHECK(lhs == Catch::Approx(1.0).margin(1e-10));
                }
    }
    SECTION("domain errors") {
        CHECK_THROWS_AS(incomplete_beta_regularized(-0.1, 1.0, 1.0), std::domain_error);
        CHECK_THROWS_AS(incomplete_beta_regularized(1.1, 1.0, 1.0), std::domain_error);
        CHECK_THROWS_AS(incomplete_beta_regularized(0.5, 0.0, 1.0), std::domain_error);
    }
}

TEST_CASE("normal cdf and quantile") {
    CHECK(normal_cdf(1.2345) == Catch::Approx(0.8914916766373298).epsilon(1e-12));
    CHECK(normal_cdf(-3.5) == Catch::Approx(2.326290790355250e-4).epsilon(1e-10));
    SECTION("symmetry") {
        for (double z : {0.0, 0.3, 1.0, 2.7, 5.0})
            CHECK(normal_cdf(z) + normal_cdf(-z) == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("quantile inverts the cdf") {
        CHECK(normal_quantile(0.025) == Catch::Approx(-1.9599639845400545).epsilon(1e-9));
        CHECK(normal_quantile(1e-6) == Catch::Approx(-4.753424308822899).epsilon(1e-8));
        for (double p = 0.001; p < 1.0; p += 0.017)
            CHECK(normal_cdf(normal_quantile(p)) == Catch::Approx(p).margin(1e-10));
        CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
        CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
    }
}

TEST_CASE("harmonic numbers") {
    CHECK(harmonic(0) == 0.0);
    CHECK(harmonic(1) == 1.0);
    CHECK(harmonic(10) == Catch::Approx(2.9289682539682538).epsilon(1e-14));
    // asymptotic oracle: H_n - ln n - gamma -> 1/(2n)
    const double gamma_e = 0.5772156649015329;
    CHECK(harmonic(1'000'000) - std::log(1e6) - gamma_e ==
          Catch::Approx(5e-7).margin(1e-9));
    CHECK_THROWS_AS(harmonic(-1), std::domain_error);
}

// ---------------------------------------------------------------------------
// scalar minimization
// ---------------------------------------------------------------------------

TEST_CASE("brent minimizer on smooth objectives") {
    auto q = [](double x) { return (x - 0.3) * (x - 0.3) + 2.0; };
    const ScalarMinimum m = minimize_scalar(q, 0.0, 1.0, 1e-10);
    CHECK(m.argmin == Catch::Approx(0.3).margin(1e-7));
    CHECK(m.min == Catch::Approx(2.0).margin(1e-12));

    auto quartic = [](double x) { return std::pow(x - 1.7, 4) - x; };
    const ScalarMinimum m2 = minimize_scalar(quartic, 0.0, 4.0, 1e-9);
    // stationarity oracle: 4 (x-1.7)^3 = 1
    const double root = 1.7 + std::cbrt(0.25);
    CHECK(m2.argmin == Catch::Approx(root).margin(1e-5));
}

TEST_CASE("brent minimizer tolerates non-finite regions") {
    auto f = [](double x) {
        if (x < 0.4 || x > 0.9) return std::numeric_limits<double>::infinity();
        return (x - 0.6) * (x - 0.6);
    };
    const ScalarMinimum m = minimize_scalar(f, 0.0, 1.0, 1e-9);
    CHECK(m.argmin == Catch::Approx(0.6).margin(1e-6));

    auto bad = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
    CHECK_THROWS_AS(minimize_scalar(bad, 0.0, 1.0, 1e-9), std::runtime_error);
    CHECK_THROWS_AS(minimize_scalar(f, 1.0, 0.0, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(minimize_scalar(f, 0.0, 1.0, 0.0), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// quadrature
// ---------------------------------------------------------------------------

TEST_CASE("adaptive 1d quadrature") {
    auto f = [](double x) { return std::sin(x); };
    const IntegralResult r = integrate_1d(f, 0.0, M_PI, 1e-12);
    CHECK(r.converged);
    CHECK(r.value == Catch::Approx(2.0).margin(1e-11));

    auto peaked = [](double x) { return std::exp(-500.0 * (x - 0.37) * (x - 0.37)); };
    const IntegralResult r2 = integrate_1d(peaked, 0.0, 1.0, 1e-12);
    CHECK(r2.value == Catch::Approx(std::sqrt(M_PI / 500.0)).margin(1e-10));
}

TEST_CASE("2d quadrature on a separable integrand") {
    Quadrature2DSpec spec;
    spec.sigma_truncation = 2.0;
    spec.mu_halfwidth = 5.0;
    spec.rel_tolerance = 1e-9;
    auto f = [](double mu, double sigma) { return std::exp(-mu * mu) * sigma; };
    const IntegralResult r = integrate_2d(f, spec);
    // int_0^2 sigma dsigma * int_{-5}^{5} e^{-mu^2} dmu = 2 * (sqrt(pi) - tail)
    const double mu_part = std::sqrt(M_PI) * std::erf(5.0);
    CHECK(r.converged);
    CHECK(r.value == Catch::Approx(2.0 * mu_part).epsilon(1e-7));
}

TEST_CASE("2d quadrature agrees with its monte carlo method") {
    Quadrature2DSpec spec;
    spec.sigma_truncation = 2.0;
    spec.mu_halfwidth = 1.5;
    auto f = [](double mu, double sigma) {
        return std::cos(mu) * std::exp(-sigma) + 0.1 * mu * mu;
    };
    const IntegralResult adaptive = integrate_2d(f, spec);

    Quadrature2DSpec mc = spec;
    mc.method = QuadMethod::monte_carlo;
    mc.max_evaluations = 400'000;
    mc.seed = 7;
    const IntegralResult sampled = integrate_2d(f, mc);
    CHECK(std::fabs(sampled.value - adaptive.value) <= 4.0 * sampled.error_estimate);
}

TEST_CASE("2d quadrature validates its spec") {
    Quadrature2DSpec spec;
    spec.sigma_truncation = -1.0;
    spec.mu_halfwidth = 1.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.sigma_truncation = 1.0;
    spec.rel_tolerance = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// rng
// ---------------------------------------------------------------------------

TEST_CASE("rng streams are reproducible and order-stable") {
    RngStream s{42, 3};
    RngEngine a(s), b(s);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

    // derivation is order-sensitive
    CHECK(RngStream{1, 0}.derive(2).derive(5).stream_id !=
          RngStream{1, 0}.derive(5).derive(2).stream_id);
    // distinct sub-streams decorrelate
    RngEngine c(s.derive(0)), d(s.derive(1));
    int same = 0;
    for (int i = 0; i < 64; ++i)
        if (c.next_u64() == d.next_u64()) ++same;
    CHECK(same == 0);
}

TEST_CASE("rng distribution moments") {
    RngEngine eng(RngStream{2024, 0});
    const int n = 200'000;
    double su = 0.0, sn = 0.0, sn2 = 0.0, sb = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = eng.uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        su += u;
        const double z = eng.normal();
        sn += z;
        sn2 += z * z;
        sb += eng.beta(2.0, 5.0);
    }
    CHECK(su / n == Catch::Approx(0.5).margin(0.003));
    CHECK(sn / n == Catch::Approx(0.0).margin(0.01));
    CHECK(sn2 / n == Catch::Approx(1.0).margin(0.02));
    CHECK(sb / n == Catch::Approx(2.0 / 7.0).margin(0.003));

    const std::vector<double> dir = eng.dirichlet({1.0, 2.0, 3.0});
    CHECK(dir[0] + dir[1] + dir[2] == Catch::Approx(1.0).margin(1e-12));
}

// ---------------------------------------------------------------------------
// spline
// ---------------------------------------------------------------------------

TEST_CASE("cubic spline interpolates and finds minima") {
    std::vector<double> t, y;
    for (int i = 0; i <= 40; ++i) {
        t.push_back(i * 0.25);
        y.push_back(std::sin(t.back()));
    }
    const CubicSpline sp(t, y);
    // natural end conditions cost accuracy near the boundary knots
    for (double x = 0.0; x <= 10.0; x += 0.013) {
        const double margin = (x < 0.75 || x > 9.25) ? 3e-3 : 5e-4;
        CHECK(sp(x) == Catch::Approx(std::sin(x)).margin(margin));
    }
    CHECK(sp(t[7]) == Catch::Approx(y[7]).margin(1e-14));

    // dense-scan oracle for the interior minimum near 3 pi / 2
    const double m = sp.minimum_on(2.0, 8.0, 4096);
    CHECK(m == Catch::Approx(-1.0).margin(1e-3));

    CHECK_THROWS_AS(sp(-0.1), std::out_of_range);
    CHECK_THROWS_AS(sp(10.1), std::out_of_range);
    CHECK_THROWS_AS(CubicSpline({0.0, 1.0, 1.0, 2.0}, {0.0, 1.0, 2.0, 3.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(CubicSpline({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}),
                    std::invalid_argument);
}
