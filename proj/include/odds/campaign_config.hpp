#pragma once

#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "odds/campaign.hpp"

namespace odds {

/// Campaign settings plus the seed used for synthetic generation.
struct CampaignFileConfig {
    CampaignConfig campaign;
    std::uint64_t seed = 0;
};

/// Parses a `key = value` campaign configuration. Lines starting with
/// `#` and blank lines are ignored; unknown keys are errors.
///
/// Keys:
///   days, members, max_lead_days, training_days, threads  — integers
///   underdispersion, threshold_offset, cap, prior_scale,
///   initial_spread, synoptic_std, calibration_noise        — reals
///   utility     — linear | log
///   prior       — chi2 | halfnormal
///   gaussian_n  — observation count for the gaussian forecaster (0: members)
///   forecasters — comma list of frequency, gaussian, probabilistic, capped
///   record_payouts — true | false
///   seed        — unsigned integer
inline CampaignFileConfig parse_campaign_config(std::istream& in) {
    CampaignFileConfig out;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("campaign config: expected key = value at line " +
                                        std::to_string(lineno));
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        auto bad_value = [&]() {
            return std::invalid_argument("campaign config: bad value for '" + key +
                                         "' at line " + std::to_string(lineno));
        };

        CampaignConfig& c = out.campaign;
        try {
            if (key == "days") c.synthetic.days = std::stoi(val);
            else if (key == "members") c.synthetic.members = std::stoi(val);
            else if (key == "max_lead_days") c.max_lead_days = std::stoi(val);
            else if (key == "training_days") c.training_days = std::stoi(val);
            else if (key == "threads") c.threads = std::stoi(val);
            else if (key == "underdispersion") c.synthetic.underdispersion = std::stod(val);
            else if (key == "threshold_offset") c.threshold_offset = std::stod(val);
            else if (key == "cap") c.forecaster.cap = std::stod(val);
            else if (key == "prior_scale") c.forecaster.prior_scale = std::stod(val);
            else if (key == "initial_spread") c.synthetic.initial_spread = std::stod(val);
            else if (key == "synoptic_std") c.synthetic.synoptic_std = std::stod(val);
            else if (key == "calibration_noise")
                c.synthetic.calibration_noise = std::stod(val);
            else if (key == "gaussian_n") c.forecaster.gaussian_n = std::stol(val);
            else if (key == "seed") out.seed = std::stoull(val);
            else if (key == "utility") {
                if (val == "linear") c.utility = Utility::linear;
                else if (val == "log") c.utility = Utility::logarithmic;
                else throw bad_value();
            } else if (key == "prior") {
                if (val == "chi2") c.forecaster.prior = SigmaPrior::chi_2dof;
                else if (val == "halfnormal") c.forecaster.prior = SigmaPrior::half_normal;
                else throw bad_value();
            } else if (key == "record_payouts") {
                if (val == "true") c.record_payouts = true;
                else if (val == "false") c.record_payouts = false;
                else throw bad_value();
            } else if (key == "forecasters") {
                c.forecasters.clear();
                std::stringstream ss(val);
                std::string name;
                while (std::getline(ss, name, ',')) {
                    name = trim(name);
                    if (name == "frequency") c.forecasters.push_back(ForecasterKind::frequency);
                    else if (name == "gaussian") c.forecasters.push_back(ForecasterKind::gaussian);
                    else if (name == "probabilistic")
                        c.forecasters.push_back(ForecasterKind::probabilistic);
                    else if (name == "capped") c.forecasters.push_back(ForecasterKind::capped);
                    else throw bad_value();
                }
                if (c.forecasters.empty()) throw bad_value();
            } else {
                throw std::invalid_argument("campaign config: unknown key '" + key +
                                            "' at line " + std::to_string(lineno));
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) { // stoi/stod failures
            throw bad_value();
        }
    }
    return out;
}

} // namespace odds
