#pragma once

#include <vector>

#include "jdkelly/market.hpp"

namespace jdkelly {

// Standard normal CDF, 0.5 erfc(-z / sqrt 2).
double normal_cdf(double z);

// Single stock whose jumps take net return x_up with probability p_up and
// x_down otherwise.
struct BinaryJumpMarket {
    double mu = 0.0;
    double sigma = 0.0;
    double r = 0.0;
    double lambda = 0.0;
    double x_up = 1.0;
    double x_down = -0.5;
    double p_up = 0.5;

    // Throws std::invalid_argument unless x_down < 0 < x_up, 0 <= p_up <= 1
    // and the remaining parameters are finite with sigma, lambda >= 0.
    void validate() const;
    bool admissible(double b) const;
    // r + (mu - r) b - sigma^2 b^2 / 2
    double diffusion_growth(double b) const;

    MarketSpec to_market() const;
    // Requires a single-stock market with exactly one positive and one
    // negative atom.
    static BinaryJumpMarket from_market(const MarketSpec& spec);
};

// Prob{V_t(b) > V_t(c) | N_t = n, U_t = u}. Requires b != c, t > 0.
double conditional_prob(int n, int u, double t, double b, double c, const BinaryJumpMarket& market);

// Prob{V_t(b) > V_t(c)}: Poisson(lambda t) mixture over the jump count with a
// binomial split into up moves, truncated once the Poisson tail is below tol.
// Returns 0 when t == 0 or b == c (a tie is not an outperformance).
double outperformance_probability(double b, double c, double t, const BinaryJumpMarket& market, double tol = 1e-12);

std::vector<double> outperformance_curve(double b, double c, const std::vector<double>& t_grid,
                                         const BinaryJumpMarket& market, double tol = 1e-12);

}  // namespace jdkelly
