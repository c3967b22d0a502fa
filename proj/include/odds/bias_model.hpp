#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace odds {

/// Diurnal bias model mapping splined model temperature x and hour of
/// day h to station temperature:
///   y = p0(x) + p1(x) cos(2 pi h / 24) + p2(x) sin(2 pi h / 24)
/// with each p_j a cubic polynomial — twelve coefficients in total,
/// ordered (p0: 1, x, x^2, x^3), (p1: ...), (p2: ...).
struct BiasModel {
    std::array<double, 12> coefficients{};
    double residual_std = 0.0;
    double residual_mean = 0.0;
    double residual_skewness = 0.0;
    double residual_kurtosis = 0.0; // excess kurtosis
    long n_samples = 0;
    std::vector<std::string> deficient_directions;

    double adjust(double x, double h) const {
        const double c = std::cos(2.0 * M_PI * h / 24.0);
        const double s = std::sin(2.0 * M_PI * h / 24.0);
        double xp = 1.0;
        double y = 0.0;
        for (int j = 0; j < 4; ++j) {
            y += (coefficients[j] + coefficients[4 + j] * c + coefficients[8 + j] * s) * xp;
            xp *= x;
        }
        return y;
    }
};

struct BiasFitSample {
    double model_temp; // x
    double hour;       // h, hours since midnight UTC
    double station_temp; // y
};

/// Least-squares fit of the twelve coefficients. Throws on
/// rank-deficient designs, naming the deficient basis directions.
inline BiasModel fit_bias_model(const std::vector<BiasFitSample>& samples,
                                bool allow_rank_deficient = false) {
    const long n = static_cast<long>(samples.size());
    if (n < 50)
        throw std::invalid_argument("fit_bias_model: need >= 50 paired samples");
    {
        // the diurnal terms need coverage of the daily cycle
        std::array<bool, 24> seen{};
        int bins = 0;
        for (const auto& s : samples) {
            const int b = ((static_cast<int>(std::floor(s.hour)) % 24) + 24) % 24;
            if (!seen[b]) { seen[b] = true; ++bins; }
        }
        if (bins < 12)
            throw std::invalid_argument("fit_bias_model: samples must span a diurnal cycle");
    }

    Eigen::MatrixXd design(n, 12);
    Eigen::VectorXd y(n);
    for (long i = 0; i < n; ++i) {
        const auto& s = samples[i];
        const double c = std::cos(2.0 * M_PI * s.hour / 24.0);
        const double si = std::sin(2.0 * M_PI * s.hour / 24.0);
        double xp = 1.0;
        for (int j = 0; j < 4; ++j) {
            design(i, j) = xp;
            design(i, 4 + j) = c * xp;
            design(i, 8 + j) = si * xp;
            xp *= s.model_temp;
        }
        y(i) = s.station_temp;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    std::vector<std::string> deficient;
    if (qr.rank() < 12) {
        static const char* names[12] = {"1",      "x",      "x^2",    "x^3",
                                        "cos",    "x·cos",  "x^2·cos", "x^3·cos",
                                        "sin",    "x·sin",  "x^2·sin", "x^3·sin"};
        // the trailing pivots identify the dependent directions
        const auto perm = qr.colsPermutation().indices();
        for (int k = qr.rank(); k < 12; ++k) deficient.emplace_back(names[perm(k)]);
        if (!allow_rank_deficient) {
            std::string msg = "fit_bias_model: rank-deficient design; deficient directions:";
            for (const auto& d : deficient) msg += " " + d;
            throw std::runtime_error(msg);
        }
    }
    const Eigen::VectorXd beta = qr.solve(y);

    BiasModel out;
    for (int j = 0; j < 12; ++j) out.coefficients[j] = beta(j);
    out.n_samples = n;
    out.deficient_directions = std::move(deficient);

    const Eigen::VectorXd r = y - design * beta;
    const double mean = r.mean();
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (long i = 0; i < n; ++i) {
        const double d = r(i) - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n; m3 /= n; m4 /= n;
    out.residual_mean = mean;
    out.residual_std = std::sqrt(m2);
    out.residual_skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    out.residual_kurtosis = m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;
    return out;
}

} // namespace odds
