#include "jdkelly/market.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace jdkelly {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kProbabilitySumTol = 1e-12;

bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace

Vector JumpModel::mean_return() const
{
    if (atoms.empty()) return {};
    Vector m = Vector::Zero(atoms.front().x.size());
    for (const auto& a : atoms) m += a.p * a.x;
    return m;
}

Matrix JumpModel::second_moment() const
{
    if (atoms.empty()) return {};
    const auto n = atoms.front().x.size();
    Matrix m = Matrix::Zero(n, n);
    for (const auto& a : atoms) m += a.p * a.x * a.x.transpose();
    return m;
}

bool MarketSpec::pure_jump() const
{
    return (diffusion.sigma.array() == 0.0).all();
}

Matrix covariance_matrix(const Vector& sigma, const Matrix& rho)
{
    const auto n = sigma.size();
    if (rho.rows() != n || rho.cols() != n) {
        throw std::invalid_argument("covariance_matrix: rho is " + std::to_string(rho.rows()) + "x" +
                                    std::to_string(rho.cols()) + " but sigma has length " +
                                    std::to_string(n));
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::isfinite(sigma[i]) || sigma[i] < 0.0) {
            throw std::invalid_argument("covariance_matrix: sigma[" + std::to_string(i) +
                                        "] must be finite and non-negative");
        }
    }
    Matrix cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            cov(i, j) = rho(i, j) * sigma[i] * sigma[j];
        }
    }
    // exact symmetry even if rho carries roundoff asymmetry
    return 0.5 * (cov + cov.transpose());
}

bool is_positive_definite(const Matrix& m, double rel_tol)
{
    if (m.rows() == 0 || m.rows() != m.cols() || !m.allFinite()) return false;
    const double scale = m.diagonal().cwiseAbs().maxCoeff();
    if (scale <= 0.0) return false;
    Eigen::LDLT<Matrix> ldlt(m);
    if (ldlt.info() != Eigen::Success) return false;
    return (ldlt.vectorD().array() > rel_tol * scale).all();
}

std::string ValidationReport::summary() const
{
    if (valid()) return "valid";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i].field << ": " << violations[i].message;
    }
    return os.str();
}

ValidationReport validate(const MarketSpec& spec)
{
    ValidationReport report;
    auto fail = [&](std::string field, std::string message) {
        report.violations.push_back({std::move(field), std::move(message)});
    };

    const auto& d = spec.diffusion;
    const auto n = d.n();
    bool shapes_ok = true;
    if (n < 1) {
        fail("mu", "market needs at least one stock");
        return report;
    }
    if (d.sigma.size() != n) {
        fail("sigma", "length " + std::to_string(d.sigma.size()) + " does not match n = " + std::to_string(n));
        shapes_ok = false;
    }
    if (d.rho.rows() != n || d.rho.cols() != n) {
        fail("rho", "must be " + std::to_string(n) + "x" + std::to_string(n));
        shapes_ok = false;
    }
    if (!all_finite(d.mu)) fail("mu", "drift must be finite");
    if (!std::isfinite(d.r)) fail("r", "risk-free rate must be finite");

    if (shapes_ok) {
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!std::isfinite(d.sigma[i]) || d.sigma[i] < 0.0) {
                fail("sigma", "volatility sigma[" + std::to_string(i) + "] must be finite and non-negative");
            }
        }
        bool rho_ok = d.rho.allFinite();
        if (!rho_ok) fail("rho", "correlation must be finite");
        for (Eigen::Index i = 0; rho_ok && i < n; ++i) {
            if (d.rho(i, i) != 1.0) {
                fail("rho", "diagonal entry " + std::to_string(i) + " is not 1");
                rho_ok = false;
            }
            for (Eigen::Index j = 0; rho_ok && j < n; ++j) {
                if (std::abs(d.rho(i, j) - d.rho(j, i)) > kSymmetryTol) {
                    fail("rho", "correlation matrix not symmetric");
                    rho_ok = false;
                } else if (d.rho(i, j) < -1.0 || d.rho(i, j) > 1.0) {
                    fail("rho", "correlation out of range [-1, 1]");
                    rho_ok = false;
                }
            }
        }
        if (rho_ok && report.valid()) {
            const Matrix cov = covariance_matrix(d.sigma, d.rho);
            if (!is_positive_definite(cov)) {
                // A singular Sigma is tolerated only when the jump curvature
                // fills its null space, so the growth rate stays strictly concave.
                const bool have_atoms = !spec.jumps.atoms.empty() && spec.jumps.lambda > 0.0 &&
                                        spec.jumps.atoms.front().x.size() == n;
                if (!have_atoms ||
                    !is_positive_definite(cov + spec.jumps.lambda * spec.jumps.second_moment())) {
                    fail("sigma", "covariance matrix is not positive definite");
                }
            }
        }
    }

    const auto& j = spec.jumps;
    if (!std::isfinite(j.lambda) || j.lambda < 0.0) fail("lambda", "jump intensity must be finite and >= 0");
    if (j.lambda > 0.0 && j.atoms.empty()) fail("atoms", "atom list is empty but lambda > 0");
    double total = 0.0;
    for (std::size_t k = 0; k < j.atoms.size(); ++k) {
        const auto& a = j.atoms[k];
        const std::string field = "atoms[" + std::to_string(k) + "]";
        if (a.x.size() != n) {
            fail(field, "net return has length " + std::to_string(a.x.size()) + ", expected " + std::to_string(n));
            continue;
        }
        if (!all_finite(a.x)) fail(field, "net return must be finite");
        if ((a.x.array() < -1.0).any()) fail(field, "net return below -1");
        if (!std::isfinite(a.p) || a.p <= 0.0) fail(field, "probability must be > 0");
        total += a.p;
    }
    if (!j.atoms.empty() && std::abs(total - 1.0) > kProbabilitySumTol) {
        fail("atoms", "probabilities sum to " + std::to_string(total) + ", expected 1");
    }
    return report;
}

void require_valid(const MarketSpec& spec)
{
    const auto report = validate(spec);
    if (!report.valid()) throw std::invalid_argument("invalid market: " + report.summary());
}

MarketSpec shannon_demon_market(double nu, double sigma, double r, double lambda)
{
    MarketSpec spec;
    spec.diffusion.mu = Vector::Constant(1, nu + 0.5 * sigma * sigma);
    spec.diffusion.sigma = Vector::Constant(1, sigma);
    spec.diffusion.rho = Matrix::Identity(1, 1);
    spec.diffusion.r = r;
    spec.jumps.lambda = lambda;
    spec.jumps.atoms = {{Vector::Constant(1, 1.0), 0.5}, {Vector::Constant(1, -0.5), 0.5}};
    return spec;
}

MarketSpec example_market() { return shannon_demon_market(0.07, 0.15, 0.03, 1.0); }

MarketSpec with_lambda(MarketSpec spec, double lambda)
{
    spec.jumps.lambda = lambda;
    return spec;
}

}  // namespace jdkelly
