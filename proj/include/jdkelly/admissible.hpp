#pragma once

#include <limits>
#include <random>
#include <string>
#include <vector>

#include "jdkelly/market.hpp"

namespace jdkelly {

// m(b) = min over atoms of 1 + b'x. +inf for an empty atom list.
double safety_margin(const Vector& b, const JumpModel& jumps);

// Margin over the support that can actually be hit: the atom list when
// lambda > 0, nothing (so +inf) when jumps never arrive.
double safety_margin(const Vector& b, const MarketSpec& spec);

bool is_admissible(const Vector& b, const JumpModel& jumps);
bool is_admissible(const Vector& b, const MarketSpec& spec);

// Open interval B = (lower, upper) of a single-stock market.
struct AdmissibleInterval {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();

    bool contains(double b) const { return lower < b && b < upper; }
};

AdmissibleInterval admissible_interval(const JumpModel& jumps);

struct NoArbitrageReport {
    bool passed = false;
    // PASS: convex weights (one per atom) with sum_k w_k x_k ~ 0.
    std::vector<double> weights;
    // FAIL: unit direction b with min_k b'x_k > 0.
    Vector direction;
    double worst_case_return = 0.0;  // min_k b'x_k along direction (FAIL only)
    double residual = 0.0;           // |sum_k w_k x_k| at termination
    std::string equivalence;
};

// Certifies max_b min_x b'x = 0 by deciding whether 0 lies in the convex
// hull of the atoms (Wolfe's minimum-norm-point algorithm). The nearest hull
// point p doubles as the arbitrage direction when p != 0, since
// p'x >= |p|^2 for every atom x.
NoArbitrageReport check_no_arbitrage(const JumpModel& jumps, double tol = 1e-10);

// Draws a point of shrink * (B intersected with [-radius, radius]^n) by
// sampling the box uniformly and pulling the draw radially toward 0 when it
// falls outside. Every returned b has margin >= 1 - shrink.
Vector sample_admissible(const JumpModel& jumps, std::mt19937_64& rng, double radius, double shrink = 0.99);

}  // namespace jdkelly
