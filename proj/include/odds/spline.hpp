#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace odds {

/// Natural cubic spline through strictly increasing knots. Evaluation is
/// restricted to the knot range; extrapolation is a range error.
class CubicSpline {
public:
    CubicSpline(std::vector<double> t, std::vector<double> y)
        : t_(std::move(t)), y_(std::move(y)) {
        const std::size_t n = t_.size();
        if (n < 4 || y_.size() != n)
            throw std::invalid_argument("CubicSpline: need >= 4 matching knots");
        for (std::size_t i = 1; i < n; ++i)
            if (!(t_[i] > t_[i - 1]))
                throw std::invalid_argument("CubicSpline: knots must be strictly increasing");

        // second derivatives by the standard tridiagonal solve, natural ends
        m_.assign(n, 0.0);
        std::vector<double> u(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double sig = (t_[i] - t_[i - 1]) / (t_[i + 1] - t_[i - 1]);
            const double p = sig * m_[i - 1] + 2.0;
            m_[i] = (sig - 1.0) / p;
            u[i] = (y_[i + 1] - y_[i]) / (t_[i + 1] - t_[i]) -
                   (y_[i] - y_[i - 1]) / (t_[i] - t_[i - 1]);
            u[i] = (6.0 * u[i] / (t_[i + 1] - t_[i - 1]) - sig * u[i - 1]) / p;
        }
        for (std::size_t i = n - 1; i-- > 0;) m_[i] = m_[i] * m_[i + 1] + u[i];
    }

    double operator()(double x) const {
        if (x < t_.front() || x > t_.back())
            throw std::out_of_range("CubicSpline: query outside knot range");
        std::size_t lo = 0, hi = t_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (t_[mid] > x ? hi : lo) = mid;
        }
        const double h = t_[hi] - t_[lo];
        const double a = (t_[hi] - x) / h;
        const double b = (x - t_[lo]) / h;
        return a * y_[lo] + b * y_[hi] +
               ((a * a * a - a) * m_[lo] + (b * b * b - b) * m_[hi]) * h * h / 6.0;
    }

    double min_t() const { return t_.front(); }
    double max_t() const { return t_.back(); }

    /// Minimum of the spline over [a, b], scanned on `steps` points.
    double minimum_on(double a, double b, int steps = 256) const {
        double best = (*this)(a);
        for (int i = 1; i <= steps; ++i) {
            const double x = a + (b - a) * i / steps;
            best = std::min(best, (*this)(x));
        }
        return best;
    }

private:
    std::vector<double> t_, y_, m_;
};

/// Builds a spline over (hours, value) samples.
inline CubicSpline fit_spline(const std::vector<double>& hours,
                              const std::vector<double>& values) {
    return CubicSpline(hours, values);
}

} // namespace odds
