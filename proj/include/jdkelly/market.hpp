#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace jdkelly {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Continuous part of the market: n correlated geometric Brownian motions
// plus a bond growing at rate r.
struct DiffusionParams {
    Vector mu;     // arithmetic drift per year
    Vector sigma;  // volatility per sqrt(year)
    Matrix rho;    // correlation of the Brownian drivers
    double r = 0.0;

    Eigen::Index n() const { return mu.size(); }
};

// One point of the jump-return support: net return vector x (X = 1 + x)
// drawn with probability p.
struct JumpAtom {
    Vector x;
    double p = 0.0;
};

struct JumpModel {
    double lambda = 0.0;  // expected jumps per year
    std::vector<JumpAtom> atoms;

    Vector mean_return() const;
    // E[x x'] over the atoms.
    Matrix second_moment() const;
};

struct MarketSpec {
    DiffusionParams diffusion;
    JumpModel jumps;

    Eigen::Index n() const { return diffusion.n(); }
    bool pure_jump() const;  // every sigma_i == 0
};

/// Sigma_ij = rho_ij sigma_i sigma_j.
///
/// Throws std::invalid_argument on a dimension mismatch or a negative /
/// non-finite volatility. Zero volatilities are accepted so that pure-jump
/// markets can be represented; such a Sigma is singular.
Matrix covariance_matrix(const Vector& sigma, const Matrix& rho);

struct Violation {
    std::string field;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool valid() const { return violations.empty(); }
    std::string summary() const;
};

// Checks every structural invariant of the market. Does not check the
// no-arbitrage condition; see check_no_arbitrage in admissible.hpp.
ValidationReport validate(const MarketSpec& spec);

// Throws std::invalid_argument carrying the report summary when invalid.
void require_valid(const MarketSpec& spec);

// Positive definiteness test used throughout: LDL^T pivots must exceed
// tol * max diagonal entry.
bool is_positive_definite(const Matrix& m, double rel_tol = 1e-12);

// Single-stock market with geometric drift nu (mu = nu + sigma^2/2) and a
// Shannon's Demon jump law (x = +100% or -50% with equal odds).
MarketSpec shannon_demon_market(double nu, double sigma, double r, double lambda);

// The built-in worked example: nu = 0.07, sigma = 0.15, r = 0.03,
// lambda = 1, Shannon's Demon jumps.
MarketSpec example_market();

MarketSpec with_lambda(MarketSpec spec, double lambda);

}  // namespace jdkelly
