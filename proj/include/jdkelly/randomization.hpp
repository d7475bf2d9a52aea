#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "jdkelly/market.hpp"

namespace jdkelly {

// A nonnegative random initial wealth W with E[W] <= 1, swapped for the
// initial dollar before play.
class FairRandomization {
public:
    enum class Kind { degenerate, uniform_0_2, lognormal, discrete };

    struct Outcome {
        double value;
        double p;
    };

    static FairRandomization degenerate();   // W = 1
    static FairRandomization uniform_0_2();  // W ~ uniform(0, 2)
    // W = exp(-s^2/2 + s Z); throws for s < 0.
    static FairRandomization lognormal(double s);
    // Throws std::invalid_argument for a negative value, bad probabilities or
    // a mean above 1.
    static FairRandomization discrete(std::vector<Outcome> outcomes);

    Kind kind() const { return kind_; }
    double log_sigma() const { return s_; }
    const std::vector<Outcome>& outcomes() const { return outcomes_; }

    double mean() const;
    std::string describe() const;

private:
    FairRandomization(Kind kind, double s, std::vector<Outcome> outcomes)
        : kind_(kind), s_(s), outcomes_(std::move(outcomes))
    {
    }

    Kind kind_;
    double s_ = 0.0;
    std::vector<Outcome> outcomes_;
};

double sample(const FairRandomization& w, std::mt19937_64& rng);

// Increasing measure phi of the wealth ratio R = W1 V(b) / (W2 V(c)).
class PerformanceMeasure {
public:
    enum class Kind { indicator_threshold, power, ratio_share };

    static PerformanceMeasure indicator(double alpha = 1.0);  // 1{R >= alpha}
    static PerformanceMeasure power(double gamma);            // R^gamma, gamma >= 0
    static PerformanceMeasure ratio_share();                  // R / (R + 1)

    Kind kind() const { return kind_; }
    double parameter() const { return param_; }
    std::string describe() const;

private:
    PerformanceMeasure(Kind kind, double param) : kind_(kind), param_(param) {}

    Kind kind_;
    double param_;
};

// ratio may be +inf (opponent wealth zero); ratio_share maps it to 1.
// Throws std::invalid_argument on a negative or NaN ratio.
double evaluate_phi(const PerformanceMeasure& phi, double ratio);

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

// Mean and standard error of a sample, summed in index order.
Estimate summarize(const std::vector<double>& values);

// Monte Carlo estimate of E[phi(W1 / W2)] with W1, W2 independent. A 0/0
// draw counts as ratio 1. Draws come in fixed-size batches with their own
// substreams, so the result depends only on (n_samples, seed).
Estimate primitive_game_payoff(const FairRandomization& w1, const FairRandomization& w2, const PerformanceMeasure& phi,
                               std::size_t n_samples, std::uint64_t seed);

// Monte Carlo estimate of E[phi{W1 V_t(b) / (W2 V_t(c))}]; V_t(b), V_t(c)
// share each simulated path, W1 and W2 come from separate substreams.
Estimate investment_game_payoff(const FairRandomization& w1, const FairRandomization& w2, const Vector& b,
                                const Vector& c, const PerformanceMeasure& phi, double t, const MarketSpec& spec,
                                std::size_t n_paths, std::uint64_t seed);

}  // namespace jdkelly
