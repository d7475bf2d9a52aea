#include "jdkelly/admissible.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jdkelly {

namespace {

void check_dims(const Vector& b, const JumpModel& jumps)
{
    for (const auto& a : jumps.atoms) {
        if (a.x.size() != b.size()) {
            throw std::invalid_argument("safety_margin: rule has length " + std::to_string(b.size()) +
                                        " but atoms have length " + std::to_string(a.x.size()));
        }
    }
}

// Largest t with 1 + t u'x > 0 for every atom (+inf when unbounded).
double ray_exit(const Vector& u, const JumpModel& jumps)
{
    double t = std::numeric_limits<double>::infinity();
    for (const auto& a : jumps.atoms) {
        const double s = u.dot(a.x);
        if (s < 0.0) t = std::min(t, -1.0 / s);
    }
    return t;
}

struct AffineMinimum {
    Vector alpha;
    Vector point;
};

// Minimum-norm point of the affine hull of the columns of s.
AffineMinimum affine_minimum(const Matrix& s)
{
    const auto k = s.cols();
    Matrix kkt = Matrix::Zero(k + 1, k + 1);
    kkt.topLeftCorner(k, k) = s.transpose() * s;
    kkt.block(0, k, k, 1).setOnes();
    kkt.block(k, 0, 1, k).setOnes();
    Vector rhs = Vector::Zero(k + 1);
    rhs[k] = 1.0;
    const Vector sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    AffineMinimum out;
    out.alpha = sol.head(k);
    out.point = s * out.alpha;
    return out;
}

}  // namespace

double safety_margin(const Vector& b, const JumpModel& jumps)
{
    check_dims(b, jumps);
    double m = std::numeric_limits<double>::infinity();
    for (const auto& a : jumps.atoms) m = std::min(m, 1.0 + b.dot(a.x));
    return m;
}

double safety_margin(const Vector& b, const MarketSpec& spec)
{
    if (b.size() != spec.n()) {
        throw std::invalid_argument("safety_margin: rule has length " + std::to_string(b.size()) +
                                    ", market has " + std::to_string(spec.n()) + " stocks");
    }
    if (spec.jumps.lambda <= 0.0) return std::numeric_limits<double>::infinity();
    return safety_margin(b, spec.jumps);
}

bool is_admissible(const Vector& b, const JumpModel& jumps) { return safety_margin(b, jumps) > 0.0; }

bool is_admissible(const Vector& b, const MarketSpec& spec) { return safety_margin(b, spec) > 0.0; }

AdmissibleInterval admissible_interval(const JumpModel& jumps)
{
    if (jumps.atoms.empty()) throw std::invalid_argument("admissible_interval: empty atom list");
    if (jumps.atoms.front().x.size() != 1) {
        throw std::invalid_argument("admissible_interval: only defined for a single stock");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& a : jumps.atoms) {
        if (a.x.size() != 1) throw std::invalid_argument("admissible_interval: ragged atom list");
        lo = std::min(lo, a.x[0]);
        hi = std::max(hi, a.x[0]);
    }
    AdmissibleInterval out;
    if (hi > 0.0) out.lower = -1.0 / hi;
    if (lo < 0.0) out.upper = -1.0 / lo;
    return out;
}

NoArbitrageReport check_no_arbitrage(const JumpModel& jumps, double tol)
{
    NoArbitrageReport report;
    report.equivalence =
        "0 in conv(atoms) <=> max_b min_x b'x = 0 (separating hyperplane theorem, finite support)";
    const auto k = static_cast<Eigen::Index>(jumps.atoms.size());
    if (k == 0) throw std::invalid_argument("check_no_arbitrage: empty atom list");
    const auto n = jumps.atoms.front().x.size();

    Matrix pts(n, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        if (jumps.atoms[j].x.size() != n) throw std::invalid_argument("check_no_arbitrage: ragged atom list");
        pts.col(j) = jumps.atoms[j].x;
    }

    // Wolfe (1976). `active` holds atom indices of the current corral,
    // `lambda` their convex weights.
    std::vector<Eigen::Index> active;
    Vector lambda;
    {
        Eigen::Index best = 0;
        pts.colwise().squaredNorm().minCoeff(&best);
        active = {best};
        lambda = Vector::Ones(1);
    }
    Vector x = pts.col(active.front());
    const double scale = std::max(1.0, pts.colwise().norm().maxCoeff());
    const double eps = 1e-14 * scale * scale;

    for (int major = 0; major < 10 * static_cast<int>(k) + 50; ++major) {
        if (x.norm() <= tol) break;
        Eigen::Index j = 0;
        const double best = (x.transpose() * pts).minCoeff(&j);
        if (x.squaredNorm() - best <= eps) break;
        if (std::find(active.begin(), active.end(), j) != active.end()) break;
        active.push_back(j);
        lambda.conservativeResize(lambda.size() + 1);
        lambda[lambda.size() - 1] = 0.0;

        for (int minor = 0; minor < 10 * static_cast<int>(k) + 50; ++minor) {
            Matrix s(n, static_cast<Eigen::Index>(active.size()));
            for (std::size_t i = 0; i < active.size(); ++i) s.col(i) = pts.col(active[i]);
            const auto aff = affine_minimum(s);
            if ((aff.alpha.array() > 1e-15).all()) {
                lambda = aff.alpha;
                x = aff.point;
                break;
            }
            double theta = 1.0;
            for (Eigen::Index i = 0; i < aff.alpha.size(); ++i) {
                if (aff.alpha[i] <= 1e-15) {
                    const double denom = lambda[i] - aff.alpha[i];
                    if (denom > 0.0) theta = std::min(theta, lambda[i] / denom);
                }
            }
            lambda = theta * aff.alpha + (1.0 - theta) * lambda;
            std::vector<Eigen::Index> kept;
            std::vector<double> kept_w;
            for (std::size_t i = 0; i < active.size(); ++i) {
                if (lambda[static_cast<Eigen::Index>(i)] > 1e-15) {
                    kept.push_back(active[i]);
                    kept_w.push_back(lambda[static_cast<Eigen::Index>(i)]);
                }
            }
            active = std::move(kept);
            lambda = Eigen::Map<const Vector>(kept_w.data(), static_cast<Eigen::Index>(kept_w.size()));
            lambda /= lambda.sum();
            x = Vector::Zero(n);
            for (std::size_t i = 0; i < active.size(); ++i) x += lambda[static_cast<Eigen::Index>(i)] * pts.col(active[i]);
        }
    }

    report.residual = x.norm();
    if (report.residual <= tol) {
        report.passed = true;
        report.weights.assign(static_cast<std::size_t>(k), 0.0);
        for (std::size_t i = 0; i < active.size(); ++i) {
            report.weights[static_cast<std::size_t>(active[i])] = lambda[static_cast<Eigen::Index>(i)];
        }
    } else {
        report.passed = false;
        report.direction = x / x.norm();
        report.worst_case_return = (report.direction.transpose() * pts).minCoeff();
        if (report.worst_case_return <= 0.0) {
            // Numerically on the boundary of the hull: no strict separation.
            report.passed = true;
            report.direction = Vector();
            report.weights.assign(static_cast<std::size_t>(k), 0.0);
            for (std::size_t i = 0; i < active.size(); ++i) {
                report.weights[static_cast<std::size_t>(active[i])] = lambda[static_cast<Eigen::Index>(i)];
            }
        }
    }
    return report;
}

Vector sample_admissible(const JumpModel& jumps, std::mt19937_64& rng, double radius, double shrink)
{
    if (jumps.atoms.empty()) throw std::invalid_argument("sample_admissible: empty atom list");
    const auto n = jumps.atoms.front().x.size();
    std::uniform_real_distribution<double> unif(-radius, radius);
    Vector u(n);
    for (Eigen::Index i = 0; i < n; ++i) u[i] = unif(rng);
    const double exit = ray_exit(u, jumps);
    // 1 + t u'x is affine in t, so at t = shrink * min(1, exit) the margin is >= 1 - shrink.
    return shrink * std::min(1.0, exit) * u;
}

}  // namespace jdkelly
