#include <doctest.h>

#include "jdkelly/admissible.hpp"
#include "test_support.hpp"

using namespace jdkelly;
using jdkelly::testing::random_market;
using jdkelly::testing::vec1;

namespace {

JumpModel scalar_jumps(std::initializer_list<double> xs)
{
    JumpModel j;
    j.lambda = 1.0;
    for (double x : xs) j.atoms.push_back({vec1(x), 1.0 / static_cast<double>(xs.size())});
    return j;
}

}  // namespace

TEST_CASE("safety_margin examples")
{
    const auto demon = example_market().jumps;
    CHECK(safety_margin(vec1(0.0), demon) == 1.0);
    CHECK(safety_margin(vec1(1.5), demon) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(safety_margin(vec1(-2.0), scalar_jumps({0.01, 0.2})) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK_THROWS_AS(safety_margin(Vector::Zero(2), demon), std::invalid_argument);
}

TEST_CASE("lambda = 0 removes the jump support")
{
    const auto spec = with_lambda(example_market(), 0.0);
    CHECK(std::isinf(safety_margin(vec1(5.0), spec)));
    CHECK(is_admissible(vec1(5.0), spec));
    CHECK_FALSE(is_admissible(vec1(5.0), spec.jumps));
}

TEST_CASE("admissible_interval examples")
{
    const auto b = admissible_interval(example_market().jumps);
    CHECK(b.lower == doctest::Approx(-1.0));
    CHECK(b.upper == doctest::Approx(2.0));

    const auto ex4 = admissible_interval(scalar_jumps({0.01, 0.2}));
    CHECK(ex4.lower == doctest::Approx(-5.0));
    CHECK(std::isinf(ex4.upper));
    CHECK(ex4.upper > 0);

    const auto sym = admissible_interval(scalar_jumps({-0.5, 0.5}));
    CHECK(sym.lower == doctest::Approx(-2.0));
    CHECK(sym.upper == doctest::Approx(2.0));

    const auto down = admissible_interval(scalar_jumps({-0.5, -0.1}));
    CHECK(std::isinf(down.lower));
    CHECK(down.upper == doctest::Approx(2.0));

    CHECK_THROWS_AS(admissible_interval(JumpModel{}), std::invalid_argument);
    JumpModel two;
    two.atoms.push_back({Vector::Ones(2), 1.0});
    CHECK_THROWS_AS(admissible_interval(two), std::invalid_argument);
}

TEST_CASE("is_admissible agrees with the interval on a grid straddling both ends")
{
    const auto jumps = example_market().jumps;
    const auto b = admissible_interval(jumps);
    for (int i = -300; i <= 600; ++i) {
        const double x = -1.5 + 0.005 * i;
        CHECK(is_admissible(vec1(x), jumps) == b.contains(x));
    }
    // endpoints are excluded
    CHECK_FALSE(is_admissible(vec1(-1.0), jumps));
    CHECK_FALSE(is_admissible(vec1(2.0), jumps));
}

TEST_CASE("check_no_arbitrage examples")
{
    const auto pass = check_no_arbitrage(example_market().jumps);
    CHECK(pass.passed);
    REQUIRE(pass.weights.size() == 2);
    CHECK(pass.weights[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(pass.weights[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(pass.residual <= 1e-10);
    CHECK_FALSE(pass.equivalence.empty());

    const auto fail = check_no_arbitrage(scalar_jumps({0.01, 0.2}));
    CHECK_FALSE(fail.passed);
    REQUIRE(fail.direction.size() == 1);
    CHECK(fail.direction[0] == doctest::Approx(1.0));
    CHECK(fail.worst_case_return > 0.0);

    const auto zero = check_no_arbitrage(scalar_jumps({0.0}));
    CHECK(zero.passed);
    CHECK(zero.weights == std::vector<double>{1.0});
}

TEST_CASE("check_no_arbitrage in several dimensions")
{
    JumpModel tri;
    Vector a(2), b(2), c(2);
    a << 1.0, 0.0;
    b << -0.5, 0.5;
    c << -0.2, -0.6;
    tri.atoms = {{a, 0.3}, {b, 0.3}, {c, 0.4}};
    const auto rep = check_no_arbitrage(tri);
    CHECK(rep.passed);
    Vector combo = Vector::Zero(2);
    double total = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(rep.weights[k] >= 0.0);
        combo += rep.weights[k] * tri.atoms[k].x;
        total += rep.weights[k];
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(combo.norm() <= 1e-10);

    // Shift the hull away from 0: separating direction must be strict.
    JumpModel shifted = tri;
    for (auto& at : shifted.atoms) at.x += Vector::Constant(2, 0.7);
    const auto arb = check_no_arbitrage(shifted);
    CHECK_FALSE(arb.passed);
    CHECK(arb.direction.norm() == doctest::Approx(1.0));
    for (const auto& at : shifted.atoms) CHECK(arb.direction.dot(at.x) > 0.0);

    // Random no-arbitrage markets always pass with a convex certificate.
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto spec = random_market(rng, 1 + trial % 3);
        const auto r = check_no_arbitrage(spec.jumps);
        REQUIRE(r.passed);
        Vector s = Vector::Zero(spec.n());
        for (std::size_t k = 0; k < spec.jumps.atoms.size(); ++k) s += r.weights[k] * spec.jumps.atoms[k].x;
        CHECK(s.norm() <= 1e-10);
    }
}

TEST_CASE("admissible set is convex and open, with m(0) = 1")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const auto spec = random_market(rng, 1 + trial % 3);
        const auto& jumps = spec.jumps;
        CHECK(safety_margin(Vector::Zero(spec.n()), jumps) == 1.0);

        const Vector b = sample_admissible(jumps, rng, 3.0);
        const Vector c = sample_admissible(jumps, rng, 3.0);
        REQUIRE(is_admissible(b, jumps));
        REQUIRE(is_admissible(c, jumps));
        const double theta = u01(rng);
        CHECK(safety_margin(theta * b + (1 - theta) * c, jumps) >=
              std::min(safety_margin(b, jumps), safety_margin(c, jumps)) - 1e-12);

        double max_norm = 0.0;
        for (const auto& a : jumps.atoms) max_norm = std::max(max_norm, a.x.norm());
        const double eps = 0.5 * safety_margin(b, jumps) / max_norm;
        for (Eigen::Index i = 0; i < spec.n(); ++i) {
            CHECK(is_admissible(Vector(b + eps * Vector::Unit(spec.n(), i)), jumps));
            CHECK(is_admissible(Vector(b - eps * Vector::Unit(spec.n(), i)), jumps));
        }
    }
}

TEST_CASE("sample_admissible keeps the promised margin")
{
    std::mt19937_64 rng(9);
    const auto jumps = example_market().jumps;
    for (int i = 0; i < 1000; ++i) {
        const Vector b = sample_admissible(jumps, rng, 5.0, 0.99);
        CHECK(safety_margin(b, jumps) >= 0.01 - 1e-12);
    }
}
