#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "odds/assignment.hpp"

namespace odds {

/// Investment returning R if event E occurs, R' otherwise, hedged with
/// bets against the posted two-event odds. Negative returns are losses.
struct InvestmentProblem {
    double r_on_event;
    double r_on_complement;
    OddsAssignment odds;

    void validate() const {
        if (odds.size() != 2 || !(odds.q[0] > 0.0) || !(odds.q[1] > 0.0))
            throw std::invalid_argument("InvestmentProblem: need positive two-event odds");
    }
};

struct HedgeResult {
    double lambda;        // bet on E
    double lambda_prime;  // bet on E'
    double guaranteed_return;
};

/// Bets that make the return identical across outcomes. Betting against
/// the unfavourable outcome transfers the risk to the forecaster.
inline HedgeResult hedge_investment(const InvestmentProblem& prob) {
    prob.validate();
    const double R = prob.r_on_event;
    const double Rp = prob.r_on_complement;
    const double q = prob.odds.q[0];
    const double qp = prob.odds.q[1];
    if (R > Rp) {
        const double lp = qp * (R - Rp);
        return {0.0, lp, (1.0 - qp) * R + qp * Rp};
    }
    if (R < Rp) {
        const double l = q * (Rp - R);
        return {l, 0.0, q * R + (1.0 - q) * Rp};
    }
    return {0.0, 0.0, R};
}

/// Loss L if E occurs; an action costing C reduces the loss to M.
struct MitigationProblem {
    double loss;           // L
    double action_cost;    // C
    double mitigated_loss; // M
    OddsAssignment odds;

    void validate() const {
        if (!(loss > 0.0) || !(action_cost > 0.0) || !(mitigated_loss > 0.0))
            throw std::invalid_argument("MitigationProblem: L, C, M must be positive");
        if (loss <= mitigated_loss)
            throw std::invalid_argument(
                "MitigationProblem: mitigation must improve on the loss (M < L)");
        if (odds.size() != 2 || !(odds.q[0] > 0.0) || !(odds.q[1] > 0.0))
            throw std::invalid_argument("MitigationProblem: need positive two-event odds");
    }
};

struct MitigationResult {
    bool take_action;
    double bet_on_event;       // lambda or mu
    double bet_on_complement;  // lambda' or mu'
    double fixed_loss;         // outcome-independent value (negative)
};

/// Picks the fixed-loss candidate with the smallest loss:
///   no action:        bets (qL, 0),        loss -qL
///   action, C <= M:   bets (q(M-C), 0),    loss -qM - (1-q)C
///   action, M <  C:   bets (0, q'(C-M)),   loss -(1-q')M - q'C
/// The client consumes q and q' directly; nothing is normalised.
inline MitigationResult mitigate(const MitigationProblem& prob) {
    prob.validate();
    const double L = prob.loss, C = prob.action_cost, M = prob.mitigated_loss;
    const double q = prob.odds.q[0], qp = prob.odds.q[1];

    const MitigationResult no_action{false, q * L, 0.0, -q * L};
    // C == M: the two action branches coincide with zero hedge on E'
    const MitigationResult action =
        C <= M ? MitigationResult{true, q * (M - C), 0.0, -q * M - (1.0 - q) * C}
               : MitigationResult{true, 0.0, qp * (C - M),
                                  -(1.0 - qp) * M - qp * C};
    return action.fixed_loss > no_action.fixed_loss ? action : no_action;
}

} // namespace odds
