#include <doctest.h>

#include "jdkelly/game.hpp"
#include "jdkelly/growth.hpp"
#include "jdkelly/randomization.hpp"
#include "test_support.hpp"

using namespace jdkelly;
using namespace jdkelly::testing;

namespace {

bool within(const Estimate& e, double target, double k = 3.0) { return std::abs(e.mean - target) <= k * e.std_error; }

}  // namespace

TEST_CASE("built-in randomizations are fair and nonnegative")
{
    const std::vector<FairRandomization> all = {
        FairRandomization::degenerate(), FairRandomization::uniform_0_2(), FairRandomization::lognormal(0.5),
        FairRandomization::lognormal(1.5), FairRandomization::discrete({{0.0, 0.5}, {2.0, 0.5}}),
        FairRandomization::discrete({{0.5, 0.5}, {1.0, 0.5}})};
    std::mt19937_64 rng(1);
    for (const auto& w : all) {
        INFO(w.describe());
        std::vector<double> draws(1000000);
        for (auto& d : draws) {
            d = sample(w, rng);
            REQUIRE(d >= 0.0);
        }
        const auto e = summarize(draws);
        CHECK(e.mean <= 1.0 + 3.0 * e.std_error);
        if (w.kind() != FairRandomization::Kind::degenerate) CHECK(within(e, w.mean()));
        CHECK(w.mean() <= 1.0);
    }
}

TEST_CASE("sample examples")
{
    std::mt19937_64 rng(2);
    for (int i = 0; i < 1000; ++i) CHECK(sample(FairRandomization::degenerate(), rng) == 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double u = sample(FairRandomization::uniform_0_2(), rng);
        CHECK(u >= 0.0);
        CHECK(u <= 2.0);
    }
    CHECK(sample(FairRandomization::lognormal(0.0), rng) == 1.0);
}

TEST_CASE("randomization construction errors")
{
    CHECK_THROWS_AS(FairRandomization::lognormal(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(FairRandomization::discrete({}), std::invalid_argument);
    CHECK_THROWS_AS(FairRandomization::discrete({{2.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(FairRandomization::discrete({{-1.0, 0.5}, {3.0, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(FairRandomization::discrete({{1.0, 0.6}, {1.0, 0.6}}), std::invalid_argument);
    CHECK_THROWS_AS(FairRandomization::discrete({{1.0, 0.0}, {1.0, 1.0}}), std::invalid_argument);
    CHECK(FairRandomization::discrete({{0.0, 0.25}, {4.0 / 3.0, 0.75}}).mean() == doctest::Approx(1.0));
}

TEST_CASE("evaluate_phi examples")
{
    const auto ind = PerformanceMeasure::indicator(1.0);
    CHECK(evaluate_phi(ind, 2.0) == 1.0);
    CHECK(evaluate_phi(ind, 0.5) == 0.0);
    CHECK(evaluate_phi(ind, 1.0) == 1.0);
    CHECK(evaluate_phi(PerformanceMeasure::power(1.0), 3.7) == 3.7);
    CHECK(evaluate_phi(PerformanceMeasure::power(0.5), 4.0) == 2.0);
    CHECK(evaluate_phi(PerformanceMeasure::ratio_share(), 1.0) == 0.5);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(evaluate_phi(PerformanceMeasure::ratio_share(), inf) == 1.0);
    CHECK(evaluate_phi(ind, inf) == 1.0);
    CHECK_THROWS_AS(evaluate_phi(ind, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_phi(ind, std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(PerformanceMeasure::power(-1.0), std::invalid_argument);
}

TEST_CASE("performance measures are monotone")
{
    const std::vector<PerformanceMeasure> all = {PerformanceMeasure::indicator(1.0), PerformanceMeasure::indicator(0.3),
                                                 PerformanceMeasure::power(0.5), PerformanceMeasure::power(2.0),
                                                 PerformanceMeasure::ratio_share()};
    std::mt19937_64 rng(4);
    std::exponential_distribution<double> ratio(0.5);
    for (const auto& phi : all) {
        for (int i = 0; i < 1000; ++i) {
            double a = ratio(rng), b = ratio(rng);
            if (a > b) std::swap(a, b);
            CHECK(evaluate_phi(phi, a) <= evaluate_phi(phi, b));
        }
    }
}

TEST_CASE("summarize")
{
    const auto e = summarize({1.0, 2.0, 3.0, 4.0});
    CHECK(e.n == 4);
    CHECK(e.mean == 2.5);
    CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(summarize({7.0}).std_error == 0.0);
}

TEST_CASE("primitive game examples")
{
    const auto deg = FairRandomization::degenerate();
    const auto uni = FairRandomization::uniform_0_2();
    const auto one = primitive_game_payoff(deg, deg, PerformanceMeasure::power(1.0), 1000, 1);
    CHECK(one.mean == 1.0);
    CHECK(one.std_error == 0.0);

    CHECK(within(primitive_game_payoff(uni, uni, PerformanceMeasure::indicator(1.0), 200000, 2), 0.5));
    CHECK(within(primitive_game_payoff(uni, deg, PerformanceMeasure::indicator(1.0), 200000, 3), 0.5));
    CHECK(within(primitive_game_payoff(uni, uni, PerformanceMeasure::ratio_share(), 200000, 4), 0.5));

    // both players draw 0 together a quarter of the time
    const auto coin = FairRandomization::discrete({{0.0, 0.5}, {2.0, 0.5}});
    CHECK(within(primitive_game_payoff(coin, coin, PerformanceMeasure::indicator(1.0), 200000, 5), 0.75));
    CHECK_THROWS_AS(primitive_game_payoff(deg, deg, PerformanceMeasure::power(1.0), 0, 1), std::invalid_argument);
}

TEST_CASE("primitive game is deterministic in the seed")
{
    const auto uni = FairRandomization::uniform_0_2();
    const auto a = primitive_game_payoff(uni, uni, PerformanceMeasure::ratio_share(), 50000, 9);
    const auto b = primitive_game_payoff(uni, uni, PerformanceMeasure::ratio_share(), 50000, 9);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    const auto c = primitive_game_payoff(uni, uni, PerformanceMeasure::ratio_share(), 50000, 10);
    CHECK(a.mean != c.mean);
}

TEST_CASE("investment game examples")
{
    const auto spec = example_market();
    const auto deg = FairRandomization::degenerate();
    const auto uni = FairRandomization::uniform_0_2();
    const Vector kelly = solve_kelly(spec).b_star;

    SUBCASE("identity measure matches the expected wealth ratio")
    {
        const auto e = investment_game_payoff(deg, deg, vec1(0.585), vec1(1.0), PerformanceMeasure::power(1.0), 1.0,
                                              spec, 20000, 21);
        CHECK(within(e, expected_wealth_ratio(vec1(0.585), vec1(1.0), 1.0, spec)));
    }
    SUBCASE("identical rules tie exactly")
    {
        const auto e =
            investment_game_payoff(deg, deg, vec1(0.7), vec1(0.7), PerformanceMeasure::indicator(1.0), 3.0, spec, 5000, 22);
        CHECK(e.mean == 1.0);
    }
    SUBCASE("symmetric randomizations at the Kelly rule")
    {
        const auto e =
            investment_game_payoff(uni, uni, kelly, kelly, PerformanceMeasure::indicator(1.0), 1.0, spec, 100000, 23);
        CHECK(within(e, 0.5));
    }
    SUBCASE("t = 0 reduces to the primitive game")
    {
        const auto e = investment_game_payoff(uni, deg, vec1(0.2), vec1(1.5), PerformanceMeasure::indicator(1.0), 0.0, spec,
                                              100000, 24);
        CHECK(within(e, 0.5));
    }
    SUBCASE("rejects inadmissible rules")
    {
        CHECK_THROWS_AS(
            investment_game_payoff(deg, deg, vec1(2.5), kelly, PerformanceMeasure::indicator(1.0), 1.0, spec, 10, 1),
            std::invalid_argument);
    }
}

TEST_CASE("Kelly rule guarantees in the identity game")
{
    const auto spec = example_market();
    const auto deg = FairRandomization::degenerate();
    const auto id = PerformanceMeasure::power(1.0);
    const Vector kelly = solve_kelly(spec).b_star;
    std::mt19937_64 rng(31);
    for (int i = 0; i < 10; ++i) {
        const Vector other = random_admissible(spec, rng);
        const auto as_max = investment_game_payoff(deg, deg, kelly, other, id, 1.0, spec, 20000, 100 + i);
        const auto as_min = investment_game_payoff(deg, deg, other, kelly, id, 1.0, spec, 20000, 200 + i);
        CHECK(as_max.mean >= 1.0 - 3.0 * as_max.std_error);
        CHECK(as_min.mean <= 1.0 + 3.0 * as_min.std_error);
    }
}

TEST_CASE("investment game at the Kelly rule matches the primitive game")
{
    const auto spec = example_market();
    const Vector kelly = solve_kelly(spec).b_star;
    const auto w1 = FairRandomization::lognormal(0.5);
    const auto w2 = FairRandomization::uniform_0_2();
    for (const auto& phi : {PerformanceMeasure::indicator(1.0), PerformanceMeasure::ratio_share()}) {
        const auto inv = investment_game_payoff(w1, w2, kelly, kelly, phi, 2.0, spec, 100000, 41);
        const auto prim = primitive_game_payoff(w1, w2, phi, 100000, 42);
        CHECK(std::abs(inv.mean - prim.mean) <= 3.0 * std::hypot(inv.std_error, prim.std_error));
    }
}
