// Command-line front end: odds computation, table/curve reproduction,
// game simulation, hedging/mitigation calculus, and betting campaigns.
//
// Exit codes: 0 success, 2 input error, 3 numeric non-convergence.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "odds/campaign.hpp"
#include "odds/campaign_config.hpp"
#include "odds/decisions.hpp"
#include "odds/frequency.hpp"
#include "odds/game.hpp"
#include "odds/gaussian.hpp"
#include "odds/generic.hpp"

namespace {

using namespace odds;

constexpr int exit_ok = 0;
constexpr int exit_input_error = 2;
constexpr int exit_numeric_error = 3;

struct CommonOpts {
    std::string utility = "linear";
    std::string format = "csv";
    std::uint64_t seed = 0;
    int threads = 1;

    Utility parsed_utility() const {
        if (utility == "linear") return Utility::linear;
        if (utility == "log") return Utility::logarithmic;
        throw std::invalid_argument("--utility must be linear or log");
    }
    char sep() const { return format == "tsv" ? '\t' : ','; }
};

SigmaPrior parse_prior(const std::string& s) {
    if (s == "chi2") return SigmaPrior::chi_2dof;
    if (s == "halfnormal") return SigmaPrior::half_normal;
    throw std::invalid_argument("--prior must be chi2 or halfnormal");
}

void print_odds(const OddsAssignment& a, char sep) {
    std::printf("q%cq_prime%cs\n", sep, sep);
    std::printf("%.6f%c%.6f%c%.6f\n", a.q[0], sep, a.q[1], sep, a.excess_sum());
}

void cmd_table_fig(bool linear, int n_max, char sep) {
    std::printf("x_over_n%cq%cq_plus_qprime\n", sep, sep);
    for (long n = 1; n <= n_max; ++n)
        for (long x = 0; x <= n; ++x) {
            const OddsAssignment a =
                linear ? freq_linear_odds({x, n}) : freq_log_odds({x, n});
            std::printf("%ld/%ld%c%.3f%c%.3f\n", x, n, sep, a.q[0], sep, a.excess_sum());
        }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-probabilistic odds forecasting toolkit"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--utility", common.utility, "linear|log")->capture_default_str();
    app.add_option("--format", common.format, "csv|tsv")
        ->check(CLI::IsMember({"csv", "tsv"}))
        ->capture_default_str();
    app.add_option("--seed", common.seed, "random seed")->capture_default_str();
    app.add_option("--threads", common.threads, "worker threads")->capture_default_str();

    // odds-freq
    long x = 0, n = 1;
    double tol = 1e-10;
    auto* freq = app.add_subcommand("odds-freq", "frequency-model odds for x events in n trials");
    freq->add_option("--x", x, "event count")->required();
    freq->add_option("--n", n, "trial count")->required();
    freq->add_option("--tol", tol, "optimizer tolerance")->capture_default_str();

    // odds-gaussian
    double z = 0.0, prior_scale = 1.0;
    long n_obs = 10;
    std::string prior = "chi2";
    auto* gauss = app.add_subcommand("odds-gaussian",
                                     "Gaussian-model odds for the event {Z <= z}");
    gauss->add_option("--z", z, "standardized threshold")->required();
    gauss->add_option("--n-obs", n_obs, "observation count")->capture_default_str();
    gauss->add_option("--prior", prior, "chi2|halfnormal")->capture_default_str();
    gauss->add_option("--prior-scale", prior_scale, "prior scale")->capture_default_str();
    gauss->add_option("--tol", tol, "optimizer tolerance");

    // odds-generic
    long mc_samples = 100000;
    auto* generic = app.add_subcommand(
        "odds-generic", "Monte Carlo odds from the Beta(x+1, n-x+1) posterior");
    generic->add_option("--x", x, "event count")->required();
    generic->add_option("--n", n, "trial count")->required();
    generic->add_option("--mc-samples", mc_samples, "sample count")->capture_default_str();
    generic->add_option("--tol", tol, "constraint tolerance");

    // tables
    int n_max = 4;
    auto* fig1 = app.add_subcommand("table-fig1", "frequency/linear odds table");
    fig1->add_option("--n-max", n_max, "largest n")->capture_default_str();
    auto* fig3 = app.add_subcommand("table-fig3", "frequency/log odds table");
    fig3->add_option("--n-max", n_max, "largest n")->capture_default_str();

    // curve-gaussian
    double z_min = -4.0, z_max = 4.0, z_step = 0.25;
    auto* curve = app.add_subcommand("curve-gaussian", "CSV of (z, q, s, normal_cdf)");
    curve->add_option("--z-min", z_min)->capture_default_str();
    curve->add_option("--z-max", z_max)->capture_default_str();
    curve->add_option("--z-step", z_step)->capture_default_str();
    curve->add_option("--n-obs", n_obs, "observation count")->capture_default_str();
    curve->add_option("--prior", prior, "chi2|halfnormal")->capture_default_str();
    curve->add_option("--prior-scale", prior_scale, "prior scale")->capture_default_str();

    // simulate
    long rounds = 1000;
    std::string strategy = "informed";
    std::vector<double> q_flags, pi_flags;
    auto* sim = app.add_subcommand("simulate", "simulate client wealth against fixed odds");
    sim->add_option("--q", q_flags, "odds components")->required()->expected(2, -1);
    sim->add_option("--pi", pi_flags, "Nature's probabilities")->required()->expected(2, -1);
    sim->add_option("--rounds", rounds)->capture_default_str();
    sim->add_option("--strategy", strategy, "minimax|informed|kelly")
        ->check(CLI::IsMember({"minimax", "informed", "kelly"}))
        ->capture_default_str();

    // hedge
    double r_event = 0.0, r_complement = 0.0;
    auto* hedge = app.add_subcommand("hedge", "outcome-independent investment hedge");
    hedge->add_option("--r", r_event, "return on E")->required();
    hedge->add_option("--r-prime", r_complement, "return on E'")->required();
    hedge->add_option("--q", q_flags, "odds (q, q')")->required()->expected(2);

    // mitigate
    double loss = 0.0, cost = 0.0, mitigated = 0.0;
    auto* mit = app.add_subcommand("mitigate", "loss-mitigation decision and bets");
    mit->add_option("--loss", loss, "loss L")->required();
    mit->add_option("--cost", cost, "action cost C")->required();
    mit->add_option("--mitigated", mitigated, "mitigated loss M")->required();
    mit->add_option("--q", q_flags, "odds (q, q')")->required()->expected(2);

    // campaign
    int days = 183, members = 10, max_lead = 10;
    double cap = 0.1, underdispersion = 1.3, threshold_offset = -3.0;
    std::string station_path, ensemble_path, output_path;
    auto* camp = app.add_subcommand("campaign",
                                    "ensemble odds campaign (synthetic or CSV data)");
    camp->add_option("--days", days, "synthetic campaign length")->capture_default_str();
    camp->add_option("--members", members, "ensemble members")->capture_default_str();
    camp->add_option("--max-lead", max_lead, "lead times 1..N days")->capture_default_str();
    camp->add_option("--cap", cap, "probability floor for capped odds")->capture_default_str();
    camp->add_option("--underdispersion", underdispersion, "synthetic under-dispersion")
        ->capture_default_str();
    camp->add_option("--threshold-offset", threshold_offset)->capture_default_str();
    camp->add_option("--n-obs", n_obs, "Gaussian forecaster n")->capture_default_str();
    camp->add_option("--prior", prior, "chi2|halfnormal")->capture_default_str();
    camp->add_option("--prior-scale", prior_scale)->capture_default_str();
    camp->add_option("--station", station_path, "station CSV (timestamp,temperature)");
    camp->add_option("--ensemble", ensemble_path,
                     "ensemble CSV (launch,lead_hours,member_id,temperature); "
                     "model-space series is taken from --station-model");
    camp->add_option("--out", output_path,
                     "write the payout table here; plot data lands in "
                     "<out>.curve.csv and <out>.payouts.csv");
    std::string station_model_path, config_path;
    camp->add_option("--station-model", station_model_path,
                     "model-space hourly CSV paired with --station");
    camp->add_option("--config", config_path, "key = value campaign configuration file");

    // global flags (--utility, --seed, ...) may appear after a subcommand
    for (CLI::App* sub : {freq, gauss, generic, fig1, fig3, curve, sim, hedge, mit, camp})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input_error;
    }

    try {
        const char sep = common.sep();
        if (freq->parsed()) {
            const BernoulliPosterior post{x, n};
            print_odds(common.parsed_utility() == Utility::linear
                           ? freq_linear_odds(post, tol)
                           : freq_log_odds(post),
                       sep);
        } else if (gauss->parsed()) {
            GaussianPosterior post{0.0, 1.0, n_obs, parse_prior(prior), prior_scale};
            print_odds(common.parsed_utility() == Utility::linear
                           ? gaussian_linear_odds(post, z, tol)
                           : gaussian_log_odds(post, z),
                       sep);
        } else if (generic->parsed()) {
            const GenericPosterior post = bernoulli_generic({x, n});
            const RngStream rng{common.seed, 0};
            const OddsAssignment a = common.parsed_utility() == Utility::linear
                                         ? generic_linear_odds(post, mc_samples, rng, tol)
                                         : generic_log_odds(post, mc_samples, rng);
            print_odds(a, sep);
        } else if (fig1->parsed()) {
            cmd_table_fig(true, n_max, sep);
        } else if (fig3->parsed()) {
            cmd_table_fig(false, n_max, sep);
        } else if (curve->parsed()) {
            GaussianPosterior post{0.0, 1.0, n_obs, parse_prior(prior), prior_scale};
            std::printf("z%cq%cs%cnormal_cdf\n", sep, sep, sep);
            bool all_converged = true;
            for (double zz = z_min; zz <= z_max + 1e-9; zz += z_step) {
                const OddsAssignment a = common.parsed_utility() == Utility::linear
                                             ? gaussian_linear_odds(post, zz)
                                             : gaussian_log_odds(post, zz);
                all_converged = all_converged && a.converged;
                std::printf("%.4f%c%.6f%c%.6f%c%.6f\n", zz, sep, a.q[0], sep,
                            a.excess_sum(), sep, normal_cdf(zz));
            }
            if (!all_converged) return exit_numeric_error;
        } else if (sim->parsed()) {
            OddsAssignment q;
            q.q = q_flags;
            ClientStrategy strat;
            strat.kind = strategy == "minimax"    ? ClientKind::minimax
                         : strategy == "informed" ? ClientKind::informed_linear
                                                  : ClientKind::kelly;
            strat.pi_true = pi_flags;
            const WealthTrajectory traj =
                simulate_wealth(q, strat, pi_flags, rounds, {common.seed, 0});
            std::printf("round%cwealth\n", sep);
            for (std::size_t i = 0; i < traj.w.size(); ++i)
                std::printf("%zu%c%.10g\n", i, sep, traj.w[i]);
        } else if (hedge->parsed()) {
            OddsAssignment q;
            q.q = q_flags;
            const HedgeResult h = hedge_investment({r_event, r_complement, q});
            std::printf("lambda%clambda_prime%cguaranteed_return\n", sep, sep);
            std::printf("%.6f%c%.6f%c%.6f\n", h.lambda, sep, h.lambda_prime, sep,
                        h.guaranteed_return);
        } else if (mit->parsed()) {
            OddsAssignment q;
            q.q = q_flags;
            const MitigationResult r = mitigate({loss, cost, mitigated, q});
            std::printf("take_action%cbet_on_event%cbet_on_complement%cfixed_loss\n", sep,
                        sep, sep);
            std::printf("%d%c%.6f%c%.6f%c%.6f\n", r.take_action ? 1 : 0, sep,
                        r.bet_on_event, sep, r.bet_on_complement, sep, r.fixed_loss);
        } else if (camp->parsed()) {
            CampaignConfig cfg;
            std::uint64_t seed = common.seed;
            if (!config_path.empty()) {
                std::ifstream fc(config_path);
                if (!fc) throw std::invalid_argument("campaign: cannot open --config file");
                CampaignFileConfig file = parse_campaign_config(fc);
                cfg = file.campaign;
                seed = file.seed;
            } else {
                cfg.synthetic.days = days;
                cfg.synthetic.members = members;
                cfg.synthetic.underdispersion = underdispersion;
                cfg.max_lead_days = max_lead;
                cfg.threshold_offset = threshold_offset;
                cfg.utility = common.parsed_utility();
                cfg.forecaster.cap = cap;
                cfg.forecaster.gaussian_n = n_obs;
                cfg.forecaster.prior = parse_prior(prior);
                cfg.forecaster.prior_scale = prior_scale;
                cfg.threads = common.threads;
            }
            if (!output_path.empty()) cfg.record_payouts = true;

            CampaignResult res;
            if (!station_path.empty()) {
                if (station_model_path.empty() || ensemble_path.empty())
                    throw std::invalid_argument(
                        "campaign: --station requires --station-model and --ensemble");
                std::ifstream fs(station_path), fm(station_model_path), fe(ensemble_path);
                if (!fs || !fm || !fe)
                    throw std::invalid_argument("campaign: cannot open input files");
                res = run_campaign(read_station_csv(fs), read_station_csv(fm),
                                   read_ensemble_csv(fe), cfg);
            } else {
                res = run_campaign(cfg, {seed, 0});
            }

            std::ostream* out = &std::cout;
            std::ofstream file;
            if (!output_path.empty()) {
                file.open(output_path);
                if (!file) throw std::invalid_argument("campaign: cannot open --out file");
                out = &file;
            }
            *out << "lead_days";
            for (ForecasterKind k : cfg.forecasters) *out << sep << forecaster_name(k);
            *out << '\n';
            for (int lead = 1; lead <= cfg.max_lead_days; ++lead) {
                *out << lead;
                for (ForecasterKind k : cfg.forecasters)
                    *out << sep << res.cell(k, lead).forecaster_total;
                *out << '\n';
            }

            if (!output_path.empty()) {
                // plot data: the gaussian odds curve and per-bet payout series
                const bool wants_gaussian =
                    std::find(cfg.forecasters.begin(), cfg.forecasters.end(),
                              ForecasterKind::gaussian) != cfg.forecasters.end();
                if (wants_gaussian) {
                    std::ofstream cf(output_path + ".curve.csv");
                    const long gn = cfg.forecaster.gaussian_n > 0
                                        ? cfg.forecaster.gaussian_n
                                        : cfg.synthetic.members + 1;
                    const GaussianPosterior post{0.0, 1.0, gn, cfg.forecaster.prior,
                                                 cfg.forecaster.prior_scale};
                    const GaussianOddsCurve gc(post, cfg.utility);
                    cf << "z,q,s,normal_cdf\n";
                    for (double zz = -6.0; zz <= 6.0 + 1e-9; zz += 0.25) {
                        const OddsAssignment a = gc.at(zz);
                        cf << zz << ',' << a.q[0] << ',' << a.excess_sum() << ','
                           << normal_cdf(zz) << '\n';
                    }
                }
                std::ofstream pf(output_path + ".payouts.csv");
                pf << "forecaster,lead_days,bet,payout,plot_value\n";
                for (const auto& cell : res.cells)
                    for (std::size_t i = 0; i < cell.payouts.size(); ++i)
                        pf << forecaster_name(cell.forecaster) << ',' << cell.lead_days
                           << ',' << i << ',' << cell.payouts[i] << ','
                           << payout_plot_transform(cell.payouts[i]) << '\n';
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const std::out_of_range& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return exit_numeric_error;
    }
    return exit_ok;
}
