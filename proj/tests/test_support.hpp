#pragma once

#include <cmath>
#include <random>

#include "jdkelly/admissible.hpp"
#include "jdkelly/market.hpp"

namespace jdkelly::testing {

inline Vector vec1(double v) { return Vector::Constant(1, v); }

// Random valid, arbitrage-free market with n stocks. The last atom is a
// negative multiple of the mean of the others, which puts 0 in the hull.
inline MarketSpec random_market(std::mt19937_64& rng, Eigen::Index n)
{
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> z;
    auto unif = [&](double a, double b) { return a + (b - a) * u01(rng); };

    MarketSpec spec;
    auto& d = spec.diffusion;
    d.mu.resize(n);
    d.sigma.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d.mu[i] = unif(-0.05, 0.25);
        d.sigma[i] = unif(0.1, 0.5);
    }
    Matrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = z(rng);
    Matrix c = a * a.transpose() + 0.2 * Matrix::Identity(n, n);
    const Vector s = c.diagonal().cwiseSqrt().cwiseInverse();
    d.rho = s.asDiagonal() * c * s.asDiagonal();
    d.rho = 0.5 * (d.rho + d.rho.transpose());
    d.rho.diagonal().setOnes();
    d.r = unif(0.0, 0.05);

    spec.jumps.lambda = unif(0.2, 2.0);
    const int m = 1 + static_cast<int>(u01(rng) * 3);
    std::vector<Vector> xs;
    std::vector<double> ws;
    Vector mean = Vector::Zero(n);
    double wsum = 0.0;
    for (int k = 0; k < m; ++k) {
        Vector x(n);
        for (Eigen::Index i = 0; i < n; ++i) x[i] = unif(-0.6, 1.0);
        const double w = unif(0.2, 1.0);
        xs.push_back(x);
        ws.push_back(w);
        mean += w * x;
        wsum += w;
    }
    mean /= wsum;
    const double q = unif(0.2, 0.5);
    for (int k = 0; k < m; ++k) spec.jumps.atoms.push_back({xs[k], (1.0 - q) * ws[k] / wsum});
    const double amax = mean.cwiseAbs().maxCoeff();
    const double scale = amax > 0.0 ? std::min(1.0, 0.9 / amax) : 1.0;
    spec.jumps.atoms.push_back({-scale * mean, q});
    return spec;
}

// Admissible point with margin >= 0.1, within [-2, 2]^n before shrinking.
inline Vector random_admissible(const MarketSpec& spec, std::mt19937_64& rng, double radius = 2.0)
{
    return sample_admissible(spec.jumps, rng, radius, 0.9);
}

// Independent restatement of the growth rate used by finite-difference
// oracles: no shared code with the library's evaluation path.
inline double reference_growth(const Vector& b, const MarketSpec& spec)
{
    const auto& d = spec.diffusion;
    double g = d.r;
    double quad = 0.0;
    for (Eigen::Index i = 0; i < b.size(); ++i) {
        g += (d.mu[i] - d.r) * b[i];
        for (Eigen::Index j = 0; j < b.size(); ++j) quad += b[i] * b[j] * d.rho(i, j) * d.sigma[i] * d.sigma[j];
    }
    g -= 0.5 * quad;
    if (spec.jumps.lambda > 0.0) {
        double e = 0.0;
        for (const auto& a : spec.jumps.atoms) {
            double bx = 0.0;
            for (Eigen::Index i = 0; i < b.size(); ++i) bx += b[i] * a.x[i];
            e += a.p * std::log(1.0 + bx);
        }
        g += spec.jumps.lambda * e;
    }
    return g;
}

template <typename F>
Vector central_gradient(F&& f, const Vector& b, double h)
{
    Vector g(b.size());
    for (Eigen::Index i = 0; i < b.size(); ++i) {
        Vector up = b, dn = b;
        up[i] += h;
        dn[i] -= h;
        g[i] = (f(up) - f(dn)) / (2.0 * h);
    }
    return g;
}

template <typename F>
Matrix central_jacobian(F&& f, const Vector& b, double h)
{
    Matrix jac(b.size(), b.size());
    for (Eigen::Index j = 0; j < b.size(); ++j) {
        Vector up = b, dn = b;
        up[j] += h;
        dn[j] -= h;
        jac.col(j) = (f(up) - f(dn)) / (2.0 * h);
    }
    return jac;
}

inline bool rel_close(double a, double b, double rel, double floor = 1.0)
{
    return std::abs(a - b) <= rel * std::max(floor, std::max(std::abs(a), std::abs(b)));
}

}  // namespace jdkelly::testing
