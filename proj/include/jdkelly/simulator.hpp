#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "jdkelly/market.hpp"

namespace jdkelly {

struct RebalancingRule {
    std::string name;
    Vector weights;  // fraction of wealth held in each stock
};

struct PathConfig {
    double horizon = 1.0;  // years
    double dt = 1.0;       // output sampling step, years
    std::uint64_t seed = 0;
    std::vector<RebalancingRule> rules;
    // Lets inadmissible rules through; they go bankrupt on the first jump
    // with 1 + b'x <= 0 and stay at zero wealth.
    bool allow_inadmissible = false;
};

// Throws std::invalid_argument for a bad horizon/dt, duplicate or
// mis-sized rules, or an inadmissible rule without the override.
void check_path_config(const MarketSpec& spec, const PathConfig& config);

PathConfig make_path_config(const MarketSpec& spec, double horizon, double dt, std::uint64_t seed,
                            std::vector<RebalancingRule> rules, bool allow_inadmissible = false);

// One realization of the market, observed at times[k], and the wealth of
// every rule driven by it.
struct WealthPathSet {
    std::vector<std::string> rule_names;
    std::vector<Vector> rules;
    Vector times;
    Matrix log_wealth;  // rule x time; -inf once bankrupt
    Matrix brownian;    // stock x time, standard Brownian motions W_i(t)
    std::vector<double> jump_times;
    std::vector<std::size_t> jump_outcomes;  // atom index per jump
    std::vector<int> jump_count;             // N_t per time
    std::vector<int> up_count;               // U_t per time
    std::vector<bool> bankrupt;
    std::vector<double> bankrupt_time;       // NaN if never

    std::size_t rule_index(const std::string& name) const;
    double wealth(std::size_t rule, std::size_t k) const;
    Matrix wealth() const;
};

// An atom counts as an upward jump when the sum of its net returns is
// positive (for one stock: x > 0).
bool is_up_jump(const JumpAtom& atom);

// Exact simulation: jump times from exponential interarrivals, outcomes iid
// over the atoms, Brownian increments exact between output times. Wealth is
// exp{[r + (mu - r1)'b - b'Sigma b/2] t + sum_i b_i sigma_i W_i(t)} times the
// product of jump gross returns 1 + b'x. `path` selects an independent
// realization under the same seed.
WealthPathSet simulate(const MarketSpec& spec, const PathConfig& config, std::uint64_t path = 0);

struct GrowthEstimate {
    double rate = 0.0;  // log V_T / T, -inf when bankrupt
    bool bankrupt = false;
};

GrowthEstimate empirical_growth_rate(const WealthPathSet& paths, const std::string& rule);

// Terminal values over many independent paths (statistics mode). Path i is
// the realization simulate(spec, {horizon, dt = horizon, seed}, i) would give.
struct TerminalSample {
    std::vector<std::string> rule_names;
    Matrix log_wealth;  // path x rule
    std::vector<int> jump_count;
    std::vector<int> up_count;

    Eigen::Index paths() const { return log_wealth.rows(); }
};

TerminalSample simulate_terminal(const MarketSpec& spec, const std::vector<RebalancingRule>& rules, double horizon,
                                 std::uint64_t seed, std::size_t n_paths, bool allow_inadmissible = false);

}  // namespace jdkelly
