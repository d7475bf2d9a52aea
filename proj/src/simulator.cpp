#include "jdkelly/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "jdkelly/admissible.hpp"
#include "jdkelly/rng.hpp"
#include "parallel.hpp"

namespace jdkelly {

namespace {

// Symmetric factor L with L L' = rho; falls back to the eigen square root
// when rho is only semi-definite.
Matrix correlation_factor(const Matrix& rho)
{
    Eigen::LLT<Matrix> llt(rho);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho);
    const Vector root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return eig.eigenvectors() * root.asDiagonal();
}

Vector observation_times(double horizon, double dt)
{
    const auto steps = static_cast<Eigen::Index>(std::ceil(horizon / dt * (1.0 - 1e-12)));
    Vector times(steps + 1);
    for (Eigen::Index k = 0; k < steps; ++k) times[k] = static_cast<double>(k) * dt;
    times[steps] = horizon;
    return times;
}

}  // namespace

bool is_up_jump(const JumpAtom& atom) { return atom.x.sum() > 0.0; }

void check_path_config(const MarketSpec& spec, const PathConfig& config)
{
    if (!(config.horizon > 0.0) || !std::isfinite(config.horizon)) {
        throw std::invalid_argument("path config: horizon must be positive and finite");
    }
    if (!(config.dt > 0.0) || config.dt > config.horizon) {
        throw std::invalid_argument("path config: dt must satisfy 0 < dt <= horizon");
    }
    if (config.rules.empty()) throw std::invalid_argument("path config: no rules given");
    std::set<std::string> names;
    for (const auto& rule : config.rules) {
        if (!names.insert(rule.name).second) throw std::invalid_argument("path config: duplicate rule name '" + rule.name + "'");
        if (rule.weights.size() != spec.n()) {
            throw std::invalid_argument("path config: rule '" + rule.name + "' has length " +
                                        std::to_string(rule.weights.size()) + ", market has " +
                                        std::to_string(spec.n()) + " stocks");
        }
        if (!config.allow_inadmissible && !is_admissible(rule.weights, spec)) {
            throw std::invalid_argument("path config: rule '" + rule.name +
                                        "' is not admissible (some jump would bankrupt it)");
        }
    }
}

PathConfig make_path_config(const MarketSpec& spec, double horizon, double dt, std::uint64_t seed,
                            std::vector<RebalancingRule> rules, bool allow_inadmissible)
{
    PathConfig config{horizon, dt, seed, std::move(rules), allow_inadmissible};
    check_path_config(spec, config);
    return config;
}

std::size_t WealthPathSet::rule_index(const std::string& name) const
{
    const auto it = std::find(rule_names.begin(), rule_names.end(), name);
    if (it == rule_names.end()) throw std::out_of_range("no rule named '" + name + "'");
    return static_cast<std::size_t>(it - rule_names.begin());
}

double WealthPathSet::wealth(std::size_t rule, std::size_t k) const
{
    return std::exp(log_wealth(static_cast<Eigen::Index>(rule), static_cast<Eigen::Index>(k)));
}

Matrix WealthPathSet::wealth() const { return log_wealth.array().exp().matrix(); }

WealthPathSet simulate(const MarketSpec& spec, const PathConfig& config, std::uint64_t path)
{
    require_valid(spec);
    check_path_config(spec, config);

    const auto& d = spec.diffusion;
    const auto n = spec.n();
    const auto& jumps = spec.jumps;

    WealthPathSet out;
    out.times = observation_times(config.horizon, config.dt);
    const auto n_times = out.times.size();

    // Jump arrivals and outcomes.
    if (jumps.lambda > 0.0) {
        auto time_rng = substream(config.seed, path, Stream::jump_times);
        auto outcome_rng = substream(config.seed, path, Stream::jump_outcomes);
        std::exponential_distribution<double> wait(jumps.lambda);
        std::vector<double> probs;
        for (const auto& a : jumps.atoms) probs.push_back(a.p);
        std::discrete_distribution<std::size_t> pick(probs.begin(), probs.end());
        for (double t = wait(time_rng); t <= config.horizon; t += wait(time_rng)) {
            out.jump_times.push_back(t);
            out.jump_outcomes.push_back(pick(outcome_rng));
        }
    }

    // Brownian motion at the observation times.
    out.brownian = Matrix::Zero(n, n_times);
    {
        auto rng = substream(config.seed, path, Stream::diffusion);
        std::normal_distribution<double> normal;
        const Matrix factor = correlation_factor(d.rho);
        Vector z(n);
        for (Eigen::Index k = 1; k < n_times; ++k) {
            for (Eigen::Index i = 0; i < n; ++i) z[i] = normal(rng);
            const double dt = out.times[k] - out.times[k - 1];
            out.brownian.col(k) = out.brownian.col(k - 1) + std::sqrt(dt) * (factor * z);
        }
    }

    out.jump_count.assign(static_cast<std::size_t>(n_times), 0);
    out.up_count.assign(static_cast<std::size_t>(n_times), 0);
    {
        std::size_t j = 0;
        int ups = 0;
        for (Eigen::Index k = 0; k < n_times; ++k) {
            while (j < out.jump_times.size() && out.jump_times[j] <= out.times[k]) {
                if (is_up_jump(jumps.atoms[out.jump_outcomes[j]])) ++ups;
                ++j;
            }
            out.jump_count[static_cast<std::size_t>(k)] = static_cast<int>(j);
            out.up_count[static_cast<std::size_t>(k)] = ups;
        }
    }

    const Matrix cov = covariance_matrix(d.sigma, d.rho);
    const auto n_rules = static_cast<Eigen::Index>(config.rules.size());
    out.log_wealth.resize(n_rules, n_times);
    out.bankrupt.assign(config.rules.size(), false);
    out.bankrupt_time.assign(config.rules.size(), std::numeric_limits<double>::quiet_NaN());
    for (Eigen::Index r = 0; r < n_rules; ++r) {
        const auto& rule = config.rules[static_cast<std::size_t>(r)];
        const Vector& b = rule.weights;
        out.rule_names.push_back(rule.name);
        out.rules.push_back(b);

        const double drift = d.r + (d.mu.array() - d.r).matrix().dot(b) - 0.5 * b.dot(cov * b);
        const Vector loading = b.cwiseProduct(d.sigma);
        std::vector<double> log_gross(out.jump_times.size());
        for (std::size_t j = 0; j < out.jump_times.size(); ++j) {
            const double g = 1.0 + b.dot(jumps.atoms[out.jump_outcomes[j]].x);
            if (g <= 0.0) {
                log_gross[j] = -std::numeric_limits<double>::infinity();
                if (!out.bankrupt[static_cast<std::size_t>(r)]) {
                    out.bankrupt[static_cast<std::size_t>(r)] = true;
                    out.bankrupt_time[static_cast<std::size_t>(r)] = out.jump_times[j];
                }
            } else {
                log_gross[j] = std::log(g);
            }
        }

        std::size_t j = 0;
        double jump_part = 0.0;
        for (Eigen::Index k = 0; k < n_times; ++k) {
            for (; j < static_cast<std::size_t>(out.jump_count[static_cast<std::size_t>(k)]); ++j) {
                jump_part += log_gross[j];
            }
            out.log_wealth(r, k) = jump_part == -std::numeric_limits<double>::infinity()
                                       ? jump_part
                                       : drift * out.times[k] + loading.dot(out.brownian.col(k)) + jump_part;
        }
    }
    return out;
}

GrowthEstimate empirical_growth_rate(const WealthPathSet& paths, const std::string& rule)
{
    const auto r = paths.rule_index(rule);
    const auto last = paths.times.size() - 1;
    const double horizon = paths.times[last];
    if (!(horizon > 0.0)) throw std::invalid_argument("empirical_growth_rate: horizon must be positive");
    if (paths.bankrupt[r]) return {-std::numeric_limits<double>::infinity(), true};
    return {paths.log_wealth(static_cast<Eigen::Index>(r), last) / horizon, false};
}

TerminalSample simulate_terminal(const MarketSpec& spec, const std::vector<RebalancingRule>& rules, double horizon,
                                 std::uint64_t seed, std::size_t n_paths, bool allow_inadmissible)
{
    const PathConfig config = make_path_config(spec, horizon, horizon, seed, rules, allow_inadmissible);
    TerminalSample out;
    for (const auto& rule : rules) out.rule_names.push_back(rule.name);
    out.log_wealth.resize(static_cast<Eigen::Index>(n_paths), static_cast<Eigen::Index>(rules.size()));
    out.jump_count.assign(n_paths, 0);
    out.up_count.assign(n_paths, 0);
    detail::parallel_for(n_paths, [&](std::size_t i) {
        const auto p = simulate(spec, config, i);
        const auto last = p.times.size() - 1;
        out.log_wealth.row(static_cast<Eigen::Index>(i)) = p.log_wealth.col(last).transpose();
        out.jump_count[i] = p.jump_count[static_cast<std::size_t>(last)];
        out.up_count[i] = p.up_count[static_cast<std::size_t>(last)];
    });
    return out;
}

}  // namespace jdkelly
