#pragma once

#include <optional>

#include "jdkelly/errors.hpp"
#include "jdkelly/market.hpp"

namespace jdkelly {

// Asymptotic growth rate of the constant-proportion rule b:
//   r + (mu - r1)'b - b'Sigma b / 2 + lambda E[log(1 + b'x)].
// The jump expectation is an exact sum over atoms. Throws InadmissibleRule
// naming the first atom with 1 + b'x <= 0.
double growth_rate(const Vector& b, const MarketSpec& spec);

// Single-stock growth during diffusion only: r + (mu - r)b - sigma^2 b^2 / 2.
double diffusion_growth_rate(double b, const MarketSpec& spec);

// mu - r1 - Sigma b + lambda E[x / (1 + b'x)]
Vector growth_gradient(const Vector& b, const MarketSpec& spec);

// -Sigma + lambda D with D = -E[x x' / (1 + b'x)^2].
Matrix growth_hessian(const Vector& b, const MarketSpec& spec);

struct KellyOptions {
    double tol = 1e-10;  // on the sup-norm of the gradient
    int max_iter = 100;
    double margin_keep = 0.1;      // backtrack until m(b_new) >= margin_keep * m(b)
    double ridge = 1e-12;          // added to Sigma in the Newton system when Sigma is singular
    bool allow_arbitrage = false;  // skip the no-arbitrage refusal
    std::optional<Vector> start;   // defaults to b = 0
};

struct KellySolution {
    Vector b_star;
    double growth_rate = 0.0;
    double gradient_norm = 0.0;  // sup-norm
    int iterations = 0;
    bool converged = false;
};

// Damped Newton ascent on the growth rate. Throws ArbitrageError when the
// support admits arbitrage (unless allowed), std::invalid_argument on an
// invalid market. Non-convergence is reported through `converged`.
KellySolution solve_kelly(const MarketSpec& spec, const KellyOptions& options = {});

}  // namespace jdkelly
