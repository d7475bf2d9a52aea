#include "jdkelly/outperformance.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "parallel.hpp"

namespace jdkelly {

namespace {

// log of C(n, u) p^u (1 - p)^(n - u), with 0 log 0 = 0.
double log_binomial_weight(int n, int u, double p)
{
    double w = std::lgamma(n + 1.0) - std::lgamma(u + 1.0) - std::lgamma(n - u + 1.0);
    if (u > 0) w += u * std::log(p);
    if (n - u > 0) w += (n - u) * std::log1p(-p);
    return w;
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

void BinaryJumpMarket::validate() const
{
    if (!(x_down < 0.0 && x_up > 0.0)) throw std::invalid_argument("binary jump market: need x_down < 0 < x_up");
    if (!(x_down >= -1.0)) throw std::invalid_argument("binary jump market: x_down below -1");
    if (!(p_up >= 0.0 && p_up <= 1.0)) throw std::invalid_argument("binary jump market: p_up outside [0, 1]");
    if (!std::isfinite(mu) || !std::isfinite(r) || !std::isfinite(x_up)) {
        throw std::invalid_argument("binary jump market: parameters must be finite");
    }
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("binary jump market: sigma must be >= 0");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("binary jump market: lambda must be >= 0");
}

bool BinaryJumpMarket::admissible(double b) const { return 1.0 + b * x_up > 0.0 && 1.0 + b * x_down > 0.0; }

double BinaryJumpMarket::diffusion_growth(double b) const { return r + (mu - r) * b - 0.5 * sigma * sigma * b * b; }

MarketSpec BinaryJumpMarket::to_market() const
{
    MarketSpec spec;
    spec.diffusion.mu = Vector::Constant(1, mu);
    spec.diffusion.sigma = Vector::Constant(1, sigma);
    spec.diffusion.rho = Matrix::Identity(1, 1);
    spec.diffusion.r = r;
    spec.jumps.lambda = lambda;
    if (p_up > 0.0) spec.jumps.atoms.push_back({Vector::Constant(1, x_up), p_up});
    if (p_up < 1.0) spec.jumps.atoms.push_back({Vector::Constant(1, x_down), 1.0 - p_up});
    return spec;
}

BinaryJumpMarket BinaryJumpMarket::from_market(const MarketSpec& spec)
{
    if (spec.n() != 1) throw std::invalid_argument("binary jump market: single-stock markets only");
    if (spec.jumps.atoms.size() != 2) throw std::invalid_argument("binary jump market: need exactly two jump atoms");
    const auto& a = spec.jumps.atoms[0];
    const auto& b = spec.jumps.atoms[1];
    const bool a_up = a.x[0] > b.x[0];
    const auto& up = a_up ? a : b;
    const auto& down = a_up ? b : a;
    BinaryJumpMarket m{spec.diffusion.mu[0], spec.diffusion.sigma[0], spec.diffusion.r, spec.jumps.lambda,
                       up.x[0],             down.x[0],             up.p};
    m.validate();
    return m;
}

double conditional_prob(int n, int u, double t, double b, double c, const BinaryJumpMarket& market)
{
    if (n < 0 || u < 0 || u > n) throw std::invalid_argument("conditional_prob: need 0 <= u <= n");
    if (!(t > 0.0)) throw std::invalid_argument("conditional_prob: t must be > 0");
    if (b == c) throw std::invalid_argument("conditional_prob: defined only for b != c");
    if (!market.admissible(b) || !market.admissible(c)) {
        throw std::invalid_argument("conditional_prob: b and c must both be admissible");
    }
    const double up = std::log1p(b * market.x_up) - std::log1p(c * market.x_up);
    const double down = std::log1p(b * market.x_down) - std::log1p(c * market.x_down);
    const double excess = u * up + (n - u) * down + (market.diffusion_growth(b) - market.diffusion_growth(c)) * t;
    const double scale = market.sigma * std::abs(b - c) * std::sqrt(t);
    if (scale == 0.0) return excess > 0.0 ? 1.0 : 0.0;
    return normal_cdf(excess / scale);
}

double outperformance_probability(double b, double c, double t, const BinaryJumpMarket& market, double tol)
{
    if (!(tol > 0.0)) throw std::invalid_argument("outperformance_probability: tolerance must be > 0");
    if (!(t >= 0.0)) throw std::invalid_argument("outperformance_probability: t must be >= 0");
    market.validate();
    if (!market.admissible(b) || !market.admissible(c)) {
        throw std::invalid_argument("outperformance_probability: b and c must both be admissible");
    }
    if (t == 0.0 || b == c) return 0.0;

    const double mean = market.lambda * t;
    if (mean == 0.0) return conditional_prob(0, 0, t, b, c, market);

    const double log_mean = std::log(mean);
    auto log_poisson = [&](int n) { return -mean + n * log_mean - std::lgamma(n + 1.0); };

    double total = 0.0;
    for (int n = 0;; ++n) {
        const double log_pn = log_poisson(n);
        double inner = 0.0;
        for (int u = 0; u <= n; ++u) {
            const double w = std::exp(log_pn + log_binomial_weight(n, u, market.p_up));
            if (w > 0.0) inner += w * conditional_prob(n, u, t, b, c, market);
        }
        total += inner;
        // P(N > n) <= pmf(n + 1) / (1 - mean / (n + 2)) once n + 2 > mean.
        if (n + 2 > mean) {
            const double tail = std::exp(log_poisson(n + 1)) / (1.0 - mean / (n + 2));
            if (tail < tol) break;
        }
        if (n > 100000) throw std::runtime_error("outperformance_probability: series failed to truncate");
    }
    return std::min(1.0, std::max(0.0, total));
}

std::vector<double> outperformance_curve(double b, double c, const std::vector<double>& t_grid,
                                         const BinaryJumpMarket& market, double tol)
{
    std::vector<double> out(t_grid.size());
    detail::parallel_for(t_grid.size(), [&](std::size_t i) { out[i] = outperformance_probability(b, c, t_grid[i], market, tol); }, 1);
    return out;
}

}  // namespace jdkelly
