#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "odds/assignment.hpp"
#include "odds/generic.hpp"
#include "odds/rng.hpp"

namespace odds {

/// Pay-out matrix of the Client-vs-Nature zero-sum game: a unit bet on
/// event i pays 1/q_i - 1 if Nature plays i, -1 otherwise. Entries are
/// derived from the odds, not stored.
struct GameMatrix {
    OddsAssignment q;

    double entry(std::size_t bet, std::size_t outcome) const {
        return bet == outcome ? 1.0 / q.q[bet] - 1.0 : -1.0;
    }
};

struct MinimaxStrategy {
    std::vector<double> p_star;
    double v_star;
};

/// Client strategy guaranteeing average pay-out 1/sum(q) - 1 regardless
/// of Nature: bet proportionally to the posted odds.
inline MinimaxStrategy minimax_strategy(const OddsAssignment& q) {
    double s = 0.0;
    for (double v : q.q) {
        if (!(v > 0.0)) throw std::invalid_argument("minimax_strategy: odds must be positive");
        s += v;
    }
    MinimaxStrategy out;
    out.p_star.reserve(q.size());
    for (double v : q.q) out.p_star.push_back(v / s);
    out.v_star = 1.0 / s - 1.0;
    return out;
}

/// Informed client with linear utility: bet everything on the event with
/// maximal pi_i / q_i (lowest index on ties).
inline std::size_t informed_linear_bet(const OddsAssignment& q,
                                       const std::vector<double>& pi_true) {
    if (pi_true.size() != q.size())
        throw std::invalid_argument("informed_linear_bet: dimension mismatch");
    return detail::argmax_ratio(pi_true, q.q);
}

/// Expected pay-out of the informed linear client: max_i pi_i/q_i - 1.
inline double informed_linear_value(const OddsAssignment& q,
                                    const std::vector<double>& pi_true) {
    const std::size_t i = informed_linear_bet(q, pi_true);
    return pi_true[i] / q.q[i] - 1.0;
}

/// Expected log-wealth growth rate of proportional betting p against
/// odds q when Nature plays pi: sum pi_i log(p_i / q_i). Maximized at
/// p = pi (Kelly).
inline double kelly_growth(const OddsAssignment& q, const std::vector<double>& p_bets,
                           const std::vector<double>& pi_true) {
    if (p_bets.size() != q.size() || pi_true.size() != q.size())
        throw std::invalid_argument("kelly_growth: dimension mismatch");
    double g = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (pi_true[i] == 0.0) continue;
        if (p_bets[i] <= 0.0) return -std::numeric_limits<double>::infinity();
        g += pi_true[i] * std::log(p_bets[i] / q.q[i]);
    }
    return g;
}

enum class ClientKind { minimax, informed_linear, kelly, custom };

struct ClientStrategy {
    ClientKind kind = ClientKind::minimax;
    std::vector<double> pi_true; // informed / kelly
};

struct WealthTrajectory {
    std::vector<double> w; // W_0 .. W_n
    Utility utility = Utility::linear;
};

/// Plays `rounds` rounds against Nature (event probabilities pi_nature).
/// Linear utility: one unit bet per round, wealth moves by the game
/// matrix pay-out. Logarithmic utility (kelly): entire wealth is spread
/// as proportional bets each round. Odds are fixed before any bet is
/// sampled; the forecaster never observes the bets.
inline WealthTrajectory simulate_wealth(const OddsAssignment& q,
                                        const ClientStrategy& strat,
                                        const std::vector<double>& pi_nature,
                                        long rounds, RngStream rng) {
    if (rounds < 1) throw std::invalid_argument("simulate_wealth: rounds must be >= 1");
    if (pi_nature.size() != q.size())
        throw std::invalid_argument("simulate_wealth: dimension mismatch");
    const GameMatrix game{q};
    RngEngine eng(rng);

    auto sample_index = [&](const std::vector<double>& p) {
        double u = eng.uniform();
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            if (u < p[i]) return i;
            u -= p[i];
        }
        return p.size() - 1;
    };

    WealthTrajectory traj;
    traj.w.reserve(rounds + 1);

    if (strat.kind == ClientKind::kelly) {
        traj.utility = Utility::logarithmic;
        // zero components would make a forced entire-wealth bet ruinous
        std::vector<double> bets = strat.pi_true.empty() ? pi_nature : strat.pi_true;
        double norm = 0.0;
        for (auto& b : bets) {
            b = std::max(b, 1e-12);
            norm += b;
        }
        for (auto& b : bets) b /= norm;
        double w = 1.0;
        traj.w.push_back(w);
        for (long r = 0; r < rounds; ++r) {
            const std::size_t outcome = sample_index(pi_nature);
            w *= bets[outcome] / q.q[outcome];
            traj.w.push_back(w);
        }
        return traj;
    }

    traj.utility = Utility::linear;
    const MinimaxStrategy mm = minimax_strategy(q);
    std::size_t informed_bet = 0;
    if (strat.kind == ClientKind::informed_linear) {
        if (strat.pi_true.empty())
            throw std::invalid_argument("simulate_wealth: informed client requires pi_true");
        informed_bet = informed_linear_bet(q, strat.pi_true);
    }
    double w = 0.0;
    traj.w.push_back(w);
    for (long r = 0; r < rounds; ++r) {
        const std::size_t bet = strat.kind == ClientKind::informed_linear
                                    ? informed_bet
                                    : sample_index(mm.p_star);
        const std::size_t outcome = sample_index(pi_nature);
        w += game.entry(bet, outcome);
        traj.w.push_back(w);
    }
    return traj;
}

struct MartingaleResult {
    double mean = 0.0;
    double std_error = 0.0;
    long replicates = 0;

    bool within_3se() const { return std::fabs(mean) <= 3.0 * std_error; }
};

/// Averages the informed client's expected pay-out V(pi, q) (linear) or
/// growth rate G(pi, q) (log) over posterior draws of pi. Engine odds
/// should give |mean| <= 3 SE; that is the martingale contract.
inline MartingaleResult martingale_check(const GenericPosterior& post,
                                         const OddsAssignment& q, Utility utility,
                                         long replicates, RngStream rng) {
    if (replicates < 10000)
        throw std::invalid_argument("martingale_check: replicates must be >= 10^4");
    RngEngine eng(rng);
    double mean = 0.0, m2 = 0.0;
    for (long k = 0; k < replicates; ++k) {
        const std::vector<double> pi = post.sampler(eng);
        detail::check_simplex_sample(pi, q.size());
        double v;
        if (utility == Utility::linear) {
            v = informed_linear_value(q, pi);
        } else {
            v = 0.0;
            for (std::size_t i = 0; i < q.size(); ++i)
                if (pi[i] > 0.0) v += pi[i] * std::log(pi[i] / q.q[i]);
        }
        const double d = v - mean;
        mean += d / static_cast<double>(k + 1);
        m2 += d * (v - mean);
    }
    const double se = std::sqrt(m2 / (static_cast<double>(replicates) - 1.0) /
                                static_cast<double>(replicates));
    return {mean, se, replicates};
}

inline MartingaleResult martingale_check(const BernoulliPosterior& post,
                                         const OddsAssignment& q, Utility utility,
                                         long replicates, RngStream rng) {
    return martingale_check(bernoulli_generic(post), q, utility, replicates, rng);
}

} // namespace odds
