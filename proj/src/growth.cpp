#include "jdkelly/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "jdkelly/admissible.hpp"

namespace jdkelly {

namespace {

void check_rule(const Vector& b, const MarketSpec& spec, const char* who)
{
    if (b.size() != spec.n()) {
        throw std::invalid_argument(std::string(who) + ": rule has length " + std::to_string(b.size()) +
                                    ", market has " + std::to_string(spec.n()) + " stocks");
    }
}

// Gross return 1 + b'x of atom k, or InadmissibleRule if it is not positive.
double gross_return(const Vector& b, const JumpModel& jumps, std::size_t k, const char* who)
{
    const double g = 1.0 + b.dot(jumps.atoms[k].x);
    if (!(g > 0.0)) {
        std::ostringstream os;
        os << who << ": rule is not admissible, atom " << k << " gives gross return 1 + b'x = " << g;
        throw InadmissibleRule(os.str(), k);
    }
    return g;
}

bool has_jumps(const MarketSpec& spec) { return spec.jumps.lambda > 0.0 && !spec.jumps.atoms.empty(); }

}  // namespace

double growth_rate(const Vector& b, const MarketSpec& spec)
{
    check_rule(b, spec, "growth_rate");
    const auto& d = spec.diffusion;
    const Matrix cov = covariance_matrix(d.sigma, d.rho);
    double g = d.r + (d.mu.array() - d.r).matrix().dot(b) - 0.5 * b.dot(cov * b);
    if (has_jumps(spec)) {
        double e = 0.0;
        for (std::size_t k = 0; k < spec.jumps.atoms.size(); ++k) {
            e += spec.jumps.atoms[k].p * std::log(gross_return(b, spec.jumps, k, "growth_rate"));
        }
        g += spec.jumps.lambda * e;
    }
    return g;
}

double diffusion_growth_rate(double b, const MarketSpec& spec)
{
    if (spec.n() != 1) throw std::invalid_argument("diffusion_growth_rate: single-stock markets only");
    const auto& d = spec.diffusion;
    const double s = d.sigma[0];
    return d.r + (d.mu[0] - d.r) * b - 0.5 * s * s * b * b;
}

Vector growth_gradient(const Vector& b, const MarketSpec& spec)
{
    check_rule(b, spec, "growth_gradient");
    const auto& d = spec.diffusion;
    const Matrix cov = covariance_matrix(d.sigma, d.rho);
    Vector g = (d.mu.array() - d.r).matrix() - cov * b;
    if (has_jumps(spec)) {
        Vector e = Vector::Zero(b.size());
        for (std::size_t k = 0; k < spec.jumps.atoms.size(); ++k) {
            const auto& a = spec.jumps.atoms[k];
            e += (a.p / gross_return(b, spec.jumps, k, "growth_gradient")) * a.x;
        }
        g += spec.jumps.lambda * e;
    }
    return g;
}

Matrix growth_hessian(const Vector& b, const MarketSpec& spec)
{
    check_rule(b, spec, "growth_hessian");
    const auto& d = spec.diffusion;
    Matrix h = -covariance_matrix(d.sigma, d.rho);
    if (has_jumps(spec)) {
        Matrix dmat = Matrix::Zero(b.size(), b.size());
        for (std::size_t k = 0; k < spec.jumps.atoms.size(); ++k) {
            const auto& a = spec.jumps.atoms[k];
            const double g = gross_return(b, spec.jumps, k, "growth_hessian");
            dmat -= (a.p / (g * g)) * a.x * a.x.transpose();
        }
        h += spec.jumps.lambda * dmat;
    }
    return h;
}

KellySolution solve_kelly(const MarketSpec& spec, const KellyOptions& options)
{
    require_valid(spec);
    if (has_jumps(spec) && !options.allow_arbitrage) {
        const auto arb = check_no_arbitrage(spec.jumps);
        if (!arb.passed) {
            std::ostringstream os;
            os << "solve_kelly: jump support admits arbitrage along direction [" << arb.direction.transpose()
               << "], growth rate is unbounded";
            throw ArbitrageError(os.str());
        }
    }

    const auto n = spec.n();
    const Matrix cov = covariance_matrix(spec.diffusion.sigma, spec.diffusion.rho);
    // The ridge only enters the Newton system; the objective stays exact.
    const Matrix ridge =
        is_positive_definite(cov) ? Matrix::Zero(n, n) : Matrix(options.ridge * Matrix::Identity(n, n));

    KellySolution sol;
    sol.b_star = options.start.value_or(Vector::Zero(n));
    if (sol.b_star.size() != n) throw std::invalid_argument("solve_kelly: start point has wrong length");
    if (!is_admissible(sol.b_star, spec)) throw std::invalid_argument("solve_kelly: start point is not admissible");

    double gamma = growth_rate(sol.b_star, spec);
    Vector grad = growth_gradient(sol.b_star, spec);
    for (sol.iterations = 0; sol.iterations < options.max_iter; ++sol.iterations) {
        sol.gradient_norm = grad.lpNorm<Eigen::Infinity>();
        if (sol.gradient_norm <= options.tol) {
            sol.converged = true;
            break;
        }
        const Matrix neg_hessian = -growth_hessian(sol.b_star, spec) + ridge;
        Eigen::LLT<Matrix> llt(neg_hessian);
        Vector step = llt.info() == Eigen::Success ? Vector(llt.solve(grad)) : grad;

        const double margin = safety_margin(sol.b_star, spec);
        // Accept Gamma ties at roundoff level; near the optimum the change is below eps.
        const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(gamma));
        double alpha = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < 60; ++halving, alpha *= 0.5) {
            const Vector trial = sol.b_star + alpha * step;
            const double m = safety_margin(trial, spec);
            if (!(m >= options.margin_keep * margin) || !(m > 0.0)) continue;
            const double g_new = growth_rate(trial, spec);
            if (g_new >= gamma - slack) {
                sol.b_star = trial;
                gamma = g_new;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        grad = growth_gradient(sol.b_star, spec);
    }
    sol.gradient_norm = grad.lpNorm<Eigen::Infinity>();
    sol.converged = sol.gradient_norm <= options.tol;
    sol.growth_rate = gamma;
    return sol;
}

}  // namespace jdkelly
