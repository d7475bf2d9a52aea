#include "jdkelly/game.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "jdkelly/admissible.hpp"

namespace jdkelly {

namespace {

std::size_t worst_atom(const Vector& b, const JumpModel& jumps)
{
    std::size_t worst = 0;
    for (std::size_t k = 1; k < jumps.atoms.size(); ++k) {
        if (b.dot(jumps.atoms[k].x) < b.dot(jumps.atoms[worst].x)) worst = k;
    }
    return worst;
}

void require_admissible(const Vector& b, const MarketSpec& spec, const char* who, const std::string& name)
{
    if (!is_admissible(b, spec)) {
        const auto k = worst_atom(b, spec.jumps);
        std::ostringstream os;
        os << who << ": " << name << " = [" << b.transpose() << "] is not admissible (atom " << k << ")";
        throw InadmissibleRule(os.str(), k);
    }
}

}  // namespace

double payoff_kernel(const Vector& b, const Vector& c, const MarketSpec& spec)
{
    require_admissible(b, spec, "payoff_kernel", "b");
    return growth_gradient(c, spec).dot(b - c);
}

double expected_wealth_ratio(const Vector& b, const Vector& c, double t, const MarketSpec& spec)
{
    if (!(t >= 0.0)) throw std::invalid_argument("expected_wealth_ratio: t must be >= 0");
    return std::exp(payoff_kernel(b, c, spec) * t);
}

Vector saddle_grid(const MarketSpec& spec, int points, double shrink, double center)
{
    if (spec.n() != 1) throw std::invalid_argument("saddle_grid: single-stock markets only");
    if (points < 2) throw std::invalid_argument("saddle_grid: need at least 2 points");
    AdmissibleInterval b;
    if (spec.jumps.lambda > 0.0) b = admissible_interval(spec.jumps);
    const double span = std::max(1.0, 2.0 * std::abs(center));
    const double lo = std::isfinite(b.lower) ? shrink * b.lower : center - span;
    const double hi = std::isfinite(b.upper) ? shrink * b.upper : center + span;
    return Vector::LinSpaced(points, lo, hi);
}

SaddleReport verify_saddle(const MarketSpec& spec, const SaddleOptions& options)
{
    const auto kelly = solve_kelly(spec, options.kelly);
    if (!kelly.converged) {
        std::ostringstream os;
        os << "verify_saddle: Kelly solver did not converge after " << kelly.iterations
           << " iterations (|grad| = " << kelly.gradient_norm << ", last b = [" << kelly.b_star.transpose() << "])";
        throw ConvergenceError(os.str());
    }

    SaddleReport report;
    report.b_star = kelly.b_star;
    report.min_pi_along_c = std::numeric_limits<double>::infinity();
    const Vector grad_at_star = growth_gradient(kelly.b_star, spec);

    auto visit = [&](const Vector& point) {
        report.max_abs_pi_along_b = std::max(report.max_abs_pi_along_b, std::abs(grad_at_star.dot(point - kelly.b_star)));
        const double along_c = payoff_kernel(kelly.b_star, point, spec);
        if (along_c < report.min_pi_along_c) {
            report.min_pi_along_c = along_c;
            report.argmin_c = point;
        }
    };

    if (spec.n() == 1) {
        const Vector grid = saddle_grid(spec, options.grid_points, options.shrink, kelly.b_star[0]);
        report.points = static_cast<int>(grid.size());
        report.lower = grid[0];
        report.upper = grid[grid.size() - 1];
        report.step = grid[1] - grid[0];
        for (Eigen::Index i = 0; i < grid.size(); ++i) visit(Vector::Constant(1, grid[i]));
    } else {
        report.sampled = true;
        report.points = 10 * options.grid_points;
        std::mt19937_64 rng(options.seed);
        const double radius = std::max(1.0, 2.0 * kelly.b_star.lpNorm<Eigen::Infinity>());
        const bool jumps = spec.jumps.lambda > 0.0 && !spec.jumps.atoms.empty();
        std::uniform_real_distribution<double> unif(-radius, radius);
        for (int i = 0; i < report.points; ++i) {
            Vector point(spec.n());
            if (jumps) {
                point = sample_admissible(spec.jumps, rng, radius, options.shrink);
            } else {
                for (Eigen::Index k = 0; k < point.size(); ++k) point[k] = unif(rng);
            }
            visit(point);
        }
    }
    return report;
}

Matrix saddle_surface(const MarketSpec& spec, const Vector& b_grid, const Vector& c_grid)
{
    if (spec.n() != 1) throw std::invalid_argument("saddle_surface: single-stock markets only");
    auto check = [&](const Vector& grid, const char* name) {
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            require_admissible(Vector::Constant(1, grid[i]), spec, "saddle_surface",
                               std::string(name) + "[" + std::to_string(i) + "]");
        }
    };
    check(b_grid, "b_grid");
    check(c_grid, "c_grid");

    Matrix out(b_grid.size(), c_grid.size());
    for (Eigen::Index j = 0; j < c_grid.size(); ++j) {
        const Vector c = Vector::Constant(1, c_grid[j]);
        const double coef = growth_gradient(c, spec)[0];
        for (Eigen::Index i = 0; i < b_grid.size(); ++i) out(i, j) = 100.0 * coef * (b_grid[i] - c_grid[j]);
    }
    return out;
}

}  // namespace jdkelly
