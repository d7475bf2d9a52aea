#pragma once

#include <cstdint>
#include <string>

#include "jdkelly/growth.hpp"
#include "jdkelly/market.hpp"

namespace jdkelly {

// Compound growth rate of E[V_t(b) / V_t(c)]:
//   pi(b, c) = (mu - r1 - Sigma c + lambda E[x / (1 + c'x)])'(b - c).
// Evaluated as growth_gradient(c).dot(b - c), so pi(., b*) vanishes exactly
// where the Kelly first-order condition does.
double payoff_kernel(const Vector& b, const Vector& c, const MarketSpec& spec);

// E[V_t(b) / V_t(c)] = exp(pi(b, c) t).
double expected_wealth_ratio(const Vector& b, const Vector& c, double t, const MarketSpec& spec);

struct SaddleReport {
    Vector b_star;
    double max_abs_pi_along_b = 0.0;  // max over grid of |pi(b, b*)|
    double min_pi_along_c = 0.0;      // min over grid of pi(b*, c)
    Vector argmin_c;                  // grid point attaining min_pi_along_c

    // grid description
    bool sampled = false;  // true for n >= 2 (random draws instead of a lattice)
    int points = 0;
    double lower = 0.0;  // n = 1 only
    double upper = 0.0;
    double step = 0.0;

    static constexpr double kTolerance = 1e-9;
    bool passed() const { return max_abs_pi_along_b <= kTolerance && min_pi_along_c >= -kTolerance; }
};

struct SaddleOptions {
    int grid_points = 201;
    double shrink = 0.99;         // grid spans shrink * B
    std::uint64_t seed = 0x5eedULL;  // draws for n >= 2
    KellyOptions kelly;
};

// Solves for the Kelly rule b* and scans pi(b, b*) and pi(b*, c) over an
// admissible grid. Throws ConvergenceError when the solver does not converge.
SaddleReport verify_saddle(const MarketSpec& spec, const SaddleOptions& options = {});

// Single-stock grid used by verify_saddle: `points` equally spaced values
// covering shrink * B. Unbounded sides of B are cut at center +/- span where
// span = max(1, 2|center|).
Vector saddle_grid(const MarketSpec& spec, int points, double shrink, double center);

// M(i, j) = 100 pi(b_i, c_j) for single-stock grids.
Matrix saddle_surface(const MarketSpec& spec, const Vector& b_grid, const Vector& c_grid);

}  // namespace jdkelly
