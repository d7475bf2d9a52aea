#include "jdkelly/randomization.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "jdkelly/admissible.hpp"
#include "jdkelly/rng.hpp"
#include "jdkelly/simulator.hpp"
#include "parallel.hpp"

namespace jdkelly {

namespace {

constexpr std::size_t kBatch = 1024;
constexpr double kMeanTol = 1e-12;

// W1 X / (W2 Y) for nonnegative factors given as (W, log V) pairs, 0/0 -> 1.
double wealth_ratio(double w1, double log_v1, double w2, double log_v2)
{
    const bool num_zero = w1 == 0.0 || log_v1 == -std::numeric_limits<double>::infinity();
    const bool den_zero = w2 == 0.0 || log_v2 == -std::numeric_limits<double>::infinity();
    if (num_zero && den_zero) return 1.0;
    if (den_zero) return std::numeric_limits<double>::infinity();
    if (num_zero) return 0.0;
    return std::exp(std::log(w1) + log_v1 - std::log(w2) - log_v2);
}

}  // namespace

FairRandomization FairRandomization::degenerate() { return {Kind::degenerate, 0.0, {}}; }

FairRandomization FairRandomization::uniform_0_2() { return {Kind::uniform_0_2, 0.0, {}}; }

FairRandomization FairRandomization::lognormal(double s)
{
    if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("lognormal randomization: s must be >= 0");
    return {Kind::lognormal, s, {}};
}

FairRandomization FairRandomization::discrete(std::vector<Outcome> outcomes)
{
    if (outcomes.empty()) throw std::invalid_argument("discrete randomization: no outcomes");
    double total = 0.0;
    double mean = 0.0;
    for (const auto& o : outcomes) {
        if (!(o.value >= 0.0) || !std::isfinite(o.value)) {
            throw std::invalid_argument("discrete randomization: values must be finite and >= 0");
        }
        if (!(o.p > 0.0)) throw std::invalid_argument("discrete randomization: probabilities must be > 0");
        total += o.p;
        mean += o.p * o.value;
    }
    if (std::abs(total - 1.0) > kMeanTol) throw std::invalid_argument("discrete randomization: probabilities must sum to 1");
    if (mean > 1.0 + kMeanTol) {
        throw std::invalid_argument("discrete randomization: mean " + std::to_string(mean) + " exceeds 1, not fair");
    }
    return {Kind::discrete, 0.0, std::move(outcomes)};
}

double FairRandomization::mean() const
{
    switch (kind_) {
        case Kind::degenerate:
        case Kind::uniform_0_2:
        case Kind::lognormal:
            return 1.0;
        case Kind::discrete: {
            double m = 0.0;
            for (const auto& o : outcomes_) m += o.p * o.value;
            return m;
        }
    }
    return 1.0;
}

std::string FairRandomization::describe() const
{
    std::ostringstream os;
    switch (kind_) {
        case Kind::degenerate: os << "degenerate"; break;
        case Kind::uniform_0_2: os << "uniform(0,2)"; break;
        case Kind::lognormal: os << "lognormal(s=" << s_ << ")"; break;
        case Kind::discrete:
            os << "discrete{";
            for (std::size_t i = 0; i < outcomes_.size(); ++i) {
                os << (i ? "," : "") << outcomes_[i].value << ":" << outcomes_[i].p;
            }
            os << "}";
            break;
    }
    return os.str();
}

double sample(const FairRandomization& w, std::mt19937_64& rng)
{
    switch (w.kind()) {
        case FairRandomization::Kind::degenerate:
            return 1.0;
        case FairRandomization::Kind::uniform_0_2:
            return std::uniform_real_distribution<double>(0.0, 2.0)(rng);
        case FairRandomization::Kind::lognormal: {
            const double s = w.log_sigma();
            return std::exp(-0.5 * s * s + s * std::normal_distribution<double>()(rng));
        }
        case FairRandomization::Kind::discrete: {
            const auto& out = w.outcomes();
            double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            for (const auto& o : out) {
                if (u < o.p) return o.value;
                u -= o.p;
            }
            return out.back().value;
        }
    }
    return 1.0;
}

PerformanceMeasure PerformanceMeasure::indicator(double alpha)
{
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("indicator: alpha must be finite and >= 0");
    return {Kind::indicator_threshold, alpha};
}

PerformanceMeasure PerformanceMeasure::power(double gamma)
{
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("power: gamma must be finite and >= 0");
    return {Kind::power, gamma};
}

PerformanceMeasure PerformanceMeasure::ratio_share() { return {Kind::ratio_share, 0.0}; }

std::string PerformanceMeasure::describe() const
{
    std::ostringstream os;
    switch (kind_) {
        case Kind::indicator_threshold: os << "indicator(alpha=" << param_ << ")"; break;
        case Kind::power: os << "power(gamma=" << param_ << ")"; break;
        case Kind::ratio_share: os << "ratio_share"; break;
    }
    return os.str();
}

double evaluate_phi(const PerformanceMeasure& phi, double ratio)
{
    if (!(ratio >= 0.0)) throw std::invalid_argument("evaluate_phi: ratio must be >= 0");
    switch (phi.kind()) {
        case PerformanceMeasure::Kind::indicator_threshold:
            return ratio >= phi.parameter() ? 1.0 : 0.0;
        case PerformanceMeasure::Kind::power:
            return std::pow(ratio, phi.parameter());
        case PerformanceMeasure::Kind::ratio_share:
            return std::isinf(ratio) ? 1.0 : ratio / (ratio + 1.0);
    }
    return 0.0;
}

Estimate summarize(const std::vector<double>& values)
{
    Estimate e;
    e.n = values.size();
    if (values.empty()) return e;
    double sum = 0.0;
    for (double v : values) sum += v;
    e.mean = sum / static_cast<double>(e.n);
    if (e.n > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - e.mean) * (v - e.mean);
        e.std_error = std::sqrt(ss / static_cast<double>(e.n - 1) / static_cast<double>(e.n));
    }
    return e;
}

Estimate primitive_game_payoff(const FairRandomization& w1, const FairRandomization& w2, const PerformanceMeasure& phi,
                               std::size_t n_samples, std::uint64_t seed)
{
    if (n_samples == 0) throw std::invalid_argument("primitive_game_payoff: need at least one sample");
    std::vector<double> values(n_samples);
    const std::size_t batches = (n_samples + kBatch - 1) / kBatch;
    detail::parallel_for(
        batches,
        [&](std::size_t batch) {
            auto rng1 = substream(seed, batch, Stream::randomization_1);
            auto rng2 = substream(seed, batch, Stream::randomization_2);
            const std::size_t end = std::min(n_samples, (batch + 1) * kBatch);
            for (std::size_t i = batch * kBatch; i < end; ++i) {
                const double a = sample(w1, rng1);
                const double b = sample(w2, rng2);
                values[i] = evaluate_phi(phi, wealth_ratio(a, 0.0, b, 0.0));
            }
        },
        1);
    return summarize(values);
}

Estimate investment_game_payoff(const FairRandomization& w1, const FairRandomization& w2, const Vector& b,
                                const Vector& c, const PerformanceMeasure& phi, double t, const MarketSpec& spec,
                                std::size_t n_paths, std::uint64_t seed)
{
    if (n_paths == 0) throw std::invalid_argument("investment_game_payoff: need at least one path");
    if (!(t >= 0.0)) throw std::invalid_argument("investment_game_payoff: t must be >= 0");
    if (!is_admissible(b, spec) || !is_admissible(c, spec)) {
        throw std::invalid_argument("investment_game_payoff: b and c must both be admissible");
    }

    Matrix log_v = Matrix::Zero(static_cast<Eigen::Index>(n_paths), 2);
    if (t > 0.0) {
        log_v = simulate_terminal(spec, {{"b", b}, {"c", c}}, t, seed, n_paths).log_wealth;
    }
    std::vector<double> values(n_paths);
    detail::parallel_for(n_paths, [&](std::size_t i) {
        auto rng1 = substream(seed, i, Stream::randomization_1);
        auto rng2 = substream(seed, i, Stream::randomization_2);
        const auto row = static_cast<Eigen::Index>(i);
        const double ratio = wealth_ratio(sample(w1, rng1), log_v(row, 0), sample(w2, rng2), log_v(row, 1));
        values[i] = evaluate_phi(phi, ratio);
    });
    return summarize(values);
}

}  // namespace jdkelly
