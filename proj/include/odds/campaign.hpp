#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <thread>
#include <vector>

#include "odds/assignment.hpp"
#include "odds/bias_model.hpp"
#include "odds/frequency.hpp"
#include "odds/game.hpp"
#include "odds/gaussian.hpp"
#include "odds/rng.hpp"
#include "odds/series.hpp"
#include "odds/special_functions.hpp"
#include "odds/spline.hpp"

namespace odds {

enum class ForecasterKind { frequency, gaussian, probabilistic, capped };

inline const char* forecaster_name(ForecasterKind k) {
    switch (k) {
        case ForecasterKind::frequency:     return "frequency";
        case ForecasterKind::gaussian:      return "gaussian";
        case ForecasterKind::probabilistic: return "probabilistic";
        case ForecasterKind::capped:        return "capped";
    }
    return "?";
}

enum class EventAggregation { instantaneous, daily_min_from_18utc };

/// Threshold event: station temperature (instantaneous, or daily
/// minimum over the 24 h window starting at the launch hour) more than
/// |threshold_offset| below the adjusted control at issue time.
struct ForecastEvent {
    double threshold_offset = -3.0; // degrees C relative to adjusted control at issue
    double lead_time = 24.0;        // hours
    EventAggregation aggregation = EventAggregation::daily_min_from_18utc;

    void validate() const {
        if (!(lead_time > 0.0))
            throw std::invalid_argument("ForecastEvent: lead_time must be positive");
    }
};

namespace detail {

// Adjusted member curve: spline in lead time, mapped through the bias
// model with the hour of day implied by the launch time.
struct AdjustedMember {
    CubicSpline raw;
    const BiasModel* bias;
    TimeUtc launch;

    double at(double lead_h) const {
        return bias->adjust(raw(lead_h), hour_of_day(launch) + lead_h);
    }
    double daily_min(double window_start_h, int steps = 96) const {
        double best = at(window_start_h);
        for (int i = 1; i <= steps; ++i)
            best = std::min(best, at(window_start_h + 24.0 * i / steps));
        return best;
    }
};

inline std::vector<AdjustedMember> adjust_ensemble(const EnsembleForecast& ens,
                                                   const BiasModel& bias) {
    ens.validate();
    std::vector<AdjustedMember> out;
    out.reserve(ens.members.size());
    for (const auto& m : ens.members)
        out.push_back({CubicSpline(ens.lead_hours, m), &bias, ens.launch_time});
    return out;
}

inline double member_statistic(const AdjustedMember& m, const ForecastEvent& ev) {
    if (ev.aggregation == EventAggregation::instantaneous) return m.at(ev.lead_time);
    return m.daily_min(ev.lead_time - 24.0);
}

} // namespace detail

/// Event threshold: adjusted control at issue time plus the offset.
inline double event_threshold(const EnsembleForecast& ens, const BiasModel& bias,
                              const ForecastEvent& ev) {
    detail::AdjustedMember control{CubicSpline(ens.lead_hours, ens.control()), &bias,
                                   ens.launch_time};
    return control.at(0.0) + ev.threshold_offset;
}

struct ForecasterConfig {
    long gaussian_n = 0;   // 0: use member count
    double cap = 0.1;
    double freq_tol = 1e-9;
    SigmaPrior prior = SigmaPrior::chi_2dof;
    double prior_scale = 1.0;
    const GaussianOddsCurve* gaussian_curve = nullptr; // optional cache
};

/// Odds on E = {station statistic below threshold} from the adjusted
/// ensemble, by one of the four forecaster kinds.
inline OddsAssignment forecaster_odds(const EnsembleForecast& ens, const BiasModel& bias,
                                      const ForecastEvent& ev, ForecasterKind kind,
                                      Utility utility,
                                      const ForecasterConfig& cfg = {}) {
    ev.validate();
    const auto adjusted = detail::adjust_ensemble(ens, bias);
    const double threshold = event_threshold(ens, bias, ev);

    std::vector<double> stats;
    stats.reserve(adjusted.size());
    for (const auto& m : adjusted) stats.push_back(detail::member_statistic(m, ev));

    const long n = static_cast<long>(stats.size());

    if (kind == ForecasterKind::frequency) {
        long x = 0;
        for (double v : stats)
            if (v < threshold) ++x;
        return utility == Utility::linear ? freq_linear_odds({x, n}, cfg.freq_tol)
                                          : freq_log_odds({x, n});
    }

    // member mean and population (divisor n) std
    double mean = 0.0;
    for (double v : stats) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : stats) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    const double sd = std::sqrt(std::max(var, 1e-12));
    const double z = (threshold - mean) / sd;

    if (kind == ForecasterKind::gaussian) {
        if (n < 2)
            throw std::invalid_argument("forecaster_odds: gaussian kind needs >= 2 members");
        if (cfg.gaussian_curve) return cfg.gaussian_curve->at(z);
        GaussianPosterior post{mean, sd, cfg.gaussian_n > 0 ? cfg.gaussian_n : n,
                               cfg.prior, cfg.prior_scale};
        OddsAssignment out = utility == Utility::linear
                                 ? gaussian_linear_odds(post, z)
                                 : gaussian_log_odds(post, z);
        out.utility = utility;
        return out;
    }

    const double p = std::clamp(normal_cdf(z), 1e-12, 1.0 - 1e-12);
    OddsAssignment out = probabilistic_odds(
        {p, 1.0 - p}, kind == ForecasterKind::capped ? cfg.cap : 0.0);
    out.utility = utility;
    return out;
}

/// The ultimate-challenge client's event probability: Gaussian centred
/// on the adjusted control with the bias model's residual std.
inline double challenge_client(const BiasModel& bias, double control_at_lead,
                               double threshold) {
    if (!(bias.residual_std > 0.0))
        throw std::invalid_argument("challenge_client: residual_std must be positive");
    return normal_cdf((threshold - control_at_lead) / bias.residual_std);
}

// ---------------------------------------------------------------------------
// Synthetic scenario
// ---------------------------------------------------------------------------

/// Synthetic weather generator: an autocorrelated station process with a
/// diurnal cycle, a model-space series offset by a known diurnal bias,
/// and ensembles whose shared (unrepresented) forecast error grows with
/// lead time — the knob for under-dispersion.
struct SyntheticConfig {
    int days = 183;
    int members = 10;
    double diurnal_amplitude = 4.0;
    double synoptic_std = 3.0;       // day-to-day AR(1) component
    double synoptic_rho = 0.97;      // per hour
    double calibration_noise = 1.0;  // station-vs-model residual std
    double initial_spread = 1.2;          // analysis-time member spread
    double member_spread_per_day = 0.8;   // per-member error growth (in ensemble)
    double shared_error_per_day = 0.8;    // shared error growth (not in ensemble)
    double shared_error_onset_days = 2.0; // shared error ramps in after this lead
    double underdispersion = 1.0;         // scales the shared error
    // diurnal bias of the model relative to the station
    double bias_const = 1.5, bias_cos = 2.0, bias_sin = -1.0;
};

struct SyntheticWeather {
    StationSeries station;       // hourly station temperatures
    StationSeries model_space;   // hourly model-space temperatures (same grid)
    std::vector<EnsembleForecast> forecasts; // one per day, launched 18:00 UTC
};

inline SyntheticWeather generate_synthetic(const SyntheticConfig& cfg, RngStream rng) {
    SyntheticWeather out;
    RngEngine weather(rng.derive(1));
    const int hours = (cfg.days + 12) * 24; // margin for the longest lead
    const double hstep_decay = cfg.synoptic_rho;
    const double innov = cfg.synoptic_std * std::sqrt(1.0 - hstep_decay * hstep_decay);

    std::vector<double> truth(hours);
    double synoptic = weather.normal() * cfg.synoptic_std;
    for (int h = 0; h < hours; ++h) {
        synoptic = hstep_decay * synoptic + innov * weather.normal();
        const double hod = static_cast<double>(h % 24);
        truth[h] = 8.0 + cfg.diurnal_amplitude * std::sin(2.0 * M_PI * (hod - 9.0) / 24.0) +
                   synoptic;
    }

    for (int h = 0; h < hours; ++h) {
        const TimeUtc t = static_cast<TimeUtc>(h) * 3600;
        const double hod = static_cast<double>(h % 24);
        const double c = std::cos(2.0 * M_PI * hod / 24.0);
        const double s = std::sin(2.0 * M_PI * hod / 24.0);
        out.station.push(t, truth[h]);
        const double model = truth[h] - cfg.bias_const - cfg.bias_cos * c -
                             cfg.bias_sin * s + cfg.calibration_noise * weather.normal();
        out.model_space.push(t, model);
    }

    // daily launches at 18:00 UTC, 6-hourly lead grid out to 10.5 days
    for (int d = 0; d < cfg.days; ++d) {
        RngEngine fc(rng.derive(1000 + static_cast<std::uint64_t>(d)));
        EnsembleForecast ens;
        const int launch_hour = d * 24 + 18;
        ens.launch_time = static_cast<TimeUtc>(launch_hour) * 3600;
        for (double lead = 0.0; lead <= 252.0; lead += 6.0) ens.lead_hours.push_back(lead);

        const std::size_t k = ens.lead_hours.size();
        // shared forecast error, AR(1) random walk in lead, absent from the spread
        std::vector<double> shared(k, 0.0);
        double b = 0.0;
        for (std::size_t i = 1; i < k; ++i) {
            const double dt_days = (ens.lead_hours[i] - ens.lead_hours[i - 1]) / 24.0;
            const double ramp =
                std::min(1.0, ens.lead_hours[i] / (24.0 * cfg.shared_error_onset_days));
            b += ramp * cfg.underdispersion * cfg.shared_error_per_day *
                 std::sqrt(dt_days) * fc.normal();
            shared[i] = b;
        }
        for (int m = 0; m <= cfg.members; ++m) { // m == 0 is the control
            std::vector<double> series(k);
            double e = m > 0 ? cfg.initial_spread * fc.normal() : 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                if (i > 0 && m > 0) {
                    const double dt_days = (ens.lead_hours[i] - ens.lead_hours[i - 1]) / 24.0;
                    e += cfg.member_spread_per_day * std::sqrt(dt_days) * fc.normal();
                }
                const int h = launch_hour + static_cast<int>(ens.lead_hours[i]);
                series[i] = out.model_space.temps[h] + shared[i] + e;
            }
            ens.members.push_back(std::move(series));
        }
        out.forecasts.push_back(std::move(ens));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Campaign
// ---------------------------------------------------------------------------

struct CampaignConfig {
    SyntheticConfig synthetic;
    std::vector<ForecasterKind> forecasters{
        ForecasterKind::frequency, ForecasterKind::gaussian, ForecasterKind::capped};
    Utility utility = Utility::linear;
    int max_lead_days = 10;
    double threshold_offset = -3.0;
    ForecasterConfig forecaster;
    int training_days = 0;       // 0: fit the bias model on the full station series
    int threads = 1;             // parallelism over forecast days
    bool record_payouts = false; // keep per-bet payout series for plot data
};

struct CampaignCell {
    ForecasterKind forecaster;
    int lead_days = 0;
    long bets = 0;
    double client_total = 0.0;      // linear: summed pay-outs; log: log10 wealth
    double forecaster_total = 0.0;  // exact negative of client_total
    double per_bet_mean = 0.0;      // linear utility only
    std::vector<double> payouts;    // per-bet series, when recording is enabled
};

struct CampaignResult {
    BiasModel bias;
    std::vector<CampaignCell> cells;

    const CampaignCell& cell(ForecasterKind k, int lead) const {
        for (const auto& c : cells)
            if (c.forecaster == k && c.lead_days == lead) return c;
        throw std::out_of_range("CampaignResult: no such cell");
    }
};

/// Runs the daily odds-vs-challenge-client campaign on prepared data.
inline CampaignResult run_campaign(const StationSeries& station,
                                   const StationSeries& model_space,
                                   const std::vector<EnsembleForecast>& forecasts,
                                   const CampaignConfig& cfg) {
    if (station.size() != model_space.size())
        throw std::invalid_argument("run_campaign: misaligned station/model series");

    // pair hourly samples for the bias fit
    std::vector<BiasFitSample> pairs;
    const std::size_t train = cfg.training_days > 0
                                  ? std::min<std::size_t>(cfg.training_days * 24, station.size())
                                  : station.size();
    for (std::size_t i = 0; i < train; ++i) {
        if (station.times[i] != model_space.times[i])
            throw std::invalid_argument("run_campaign: misaligned timestamps at " +
                                        format_iso8601(station.times[i]));
        pairs.push_back({model_space.temps[i], hour_of_day(station.times[i]),
                         station.temps[i]});
    }
    CampaignResult result;
    result.bias = fit_bias_model(pairs);

    // gaussian odds depend only on the standardized z; tabulate once
    ForecasterConfig fcfg = cfg.forecaster;
    std::unique_ptr<GaussianOddsCurve> gauss_curve;
    const bool wants_gaussian =
        std::find(cfg.forecasters.begin(), cfg.forecasters.end(),
                  ForecasterKind::gaussian) != cfg.forecasters.end();
    if (wants_gaussian && !fcfg.gaussian_curve && !forecasts.empty()) {
        const long n_obs = fcfg.gaussian_n > 0
                               ? fcfg.gaussian_n
                               : static_cast<long>(forecasts.front().members.size());
        GaussianPosterior post{0.0, 1.0, n_obs, fcfg.prior, fcfg.prior_scale};
        gauss_curve = std::make_unique<GaussianOddsCurve>(post, cfg.utility);
        fcfg.gaussian_curve = gauss_curve.get();
    }

    const CubicSpline station_curve(
        [&] {
            std::vector<double> h(station.size());
            for (std::size_t i = 0; i < station.size(); ++i)
                h[i] = static_cast<double>(station.times[i]) / 3600.0;
            return h;
        }(),
        station.temps);

    struct Accum {
        long bets = 0;
        double linear_total = 0.0;
        double log_wealth = 0.0; // natural log of client wealth
        std::vector<double> payouts;
    };
    using AccumMap = std::map<std::pair<int, int>, Accum>;

    auto process = [&](const EnsembleForecast& ens, AccumMap& acc) {
        detail::AdjustedMember control{CubicSpline(ens.lead_hours, ens.control()),
                                       &result.bias, ens.launch_time};
        const double launch_h = static_cast<double>(ens.launch_time) / 3600.0;
        for (int lead = 1; lead <= cfg.max_lead_days; ++lead) {
            ForecastEvent ev{cfg.threshold_offset, lead * 24.0,
                             EventAggregation::daily_min_from_18utc};
            const double threshold = event_threshold(ens, result.bias, ev);
            const double window_start = launch_h + (lead - 1) * 24.0;
            if (window_start + 24.0 > station_curve.max_t()) continue;

            // Nature: the station's minimum over the 24 h window
            const double station_min =
                station_curve.minimum_on(window_start, window_start + 24.0, 24);
            const bool event_occurred = station_min < threshold;

            // challenge client's probability from the control's window minimum
            const double control_min = control.daily_min(ev.lead_time - 24.0);
            const double pi_c = std::clamp(
                challenge_client(result.bias, control_min, threshold), 1e-12,
                1.0 - 1e-12);
            const std::vector<double> client_pi{pi_c, 1.0 - pi_c};

            for (ForecasterKind kind : cfg.forecasters) {
                const OddsAssignment q =
                    forecaster_odds(ens, result.bias, ev, kind, cfg.utility, fcfg);
                Accum& a = acc[{static_cast<int>(kind), lead}];
                ++a.bets;
                const std::size_t outcome = event_occurred ? 0 : 1;
                double payout;
                if (cfg.utility == Utility::linear) {
                    const std::size_t bet = informed_linear_bet(q, client_pi);
                    payout = GameMatrix{q}.entry(bet, outcome);
                    a.linear_total += payout;
                } else {
                    // entire wealth spread proportionally to the client's odds
                    payout = std::log(client_pi[outcome] / q.q[outcome]);
                    a.log_wealth += payout;
                }
                if (cfg.record_payouts) a.payouts.push_back(payout);
            }
        }
    };

    // forecast days are independent once the bias model is fitted; merge
    // per-chunk accumulators in chunk order so results are deterministic
    AccumMap acc;
    const int threads = std::max(1, cfg.threads);
    if (threads == 1 || forecasts.size() < 2) {
        for (const auto& ens : forecasts) process(ens, acc);
    } else {
        const std::size_t nchunk = std::min<std::size_t>(threads, forecasts.size());
        std::vector<AccumMap> partial(nchunk);
        std::vector<std::thread> pool;
        for (std::size_t c = 0; c < nchunk; ++c)
            pool.emplace_back([&, c] {
                for (std::size_t i = c; i < forecasts.size(); i += nchunk)
                    process(forecasts[i], partial[c]);
            });
        for (auto& t : pool) t.join();
        for (const auto& part : partial)
            for (const auto& [key, a] : part) {
                Accum& dst = acc[key];
                dst.bets += a.bets;
                dst.linear_total += a.linear_total;
                dst.log_wealth += a.log_wealth;
                dst.payouts.insert(dst.payouts.end(), a.payouts.begin(),
                                   a.payouts.end());
            }
    }

    for (auto& [key, a] : acc) {
        CampaignCell cell;
        cell.forecaster = static_cast<ForecasterKind>(key.first);
        cell.lead_days = key.second;
        cell.bets = a.bets;
        cell.client_total = cfg.utility == Utility::linear
                                ? a.linear_total
                                : a.log_wealth / std::log(10.0);
        cell.forecaster_total = -cell.client_total;
        cell.per_bet_mean = a.bets > 0 ? a.linear_total / static_cast<double>(a.bets) : 0.0;
        cell.payouts = std::move(a.payouts);
        result.cells.push_back(cell);
    }
    return result;
}

inline CampaignResult run_campaign(const CampaignConfig& cfg, RngStream rng) {
    const SyntheticWeather w = generate_synthetic(cfg.synthetic, rng);
    return run_campaign(w.station, w.model_space, w.forecasts, cfg);
}

/// Plot transform compressing large pay-outs: identity below 1,
/// 1 + log10 above.
inline double payout_plot_transform(double v) {
    if (v <= 1.0) return v;
    return 1.0 + std::log10(v);
}

} // namespace odds
