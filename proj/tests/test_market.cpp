#include <doctest.h>

#include "jdkelly/market.hpp"
#include "test_support.hpp"

using namespace jdkelly;
using jdkelly::testing::random_market;

namespace {

bool mentions(const ValidationReport& report, const std::string& text)
{
    for (const auto& v : report.violations) {
        if (v.message.find(text) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("covariance_matrix examples")
{
    CHECK(covariance_matrix(Vector::Constant(1, 0.15), Matrix::Identity(1, 1))(0, 0) == doctest::Approx(0.0225).epsilon(1e-15));
    CHECK(covariance_matrix(Vector::Ones(2), Matrix::Identity(2, 2)).isApprox(Matrix::Identity(2, 2)));

    Vector sigma(2);
    sigma << 0.2, 0.3;
    Matrix rho(2, 2);
    rho << 1.0, 0.5, 0.5, 1.0;
    Matrix expected(2, 2);
    expected << 0.04, 0.03, 0.03, 0.09;
    const Matrix cov = covariance_matrix(sigma, rho);
    CHECK((cov - expected).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(cov == cov.transpose());
}

TEST_CASE("covariance_matrix rejects bad input")
{
    CHECK_THROWS_AS(covariance_matrix(Vector::Ones(2), Matrix::Identity(3, 3)), std::invalid_argument);
    CHECK_THROWS_AS(covariance_matrix(Vector::Constant(1, -0.1), Matrix::Identity(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(covariance_matrix(Vector::Constant(1, NAN), Matrix::Identity(1, 1)), std::invalid_argument);
}

TEST_CASE("example market is valid and has the stated parameters")
{
    const auto spec = example_market();
    CHECK(validate(spec).valid());
    CHECK(spec.diffusion.mu[0] == doctest::Approx(0.08125).epsilon(1e-15));
    CHECK(spec.diffusion.sigma[0] == 0.15);
    CHECK(spec.diffusion.r == 0.03);
    CHECK(spec.jumps.lambda == 1.0);
    REQUIRE(spec.jumps.atoms.size() == 2);
    CHECK(spec.jumps.mean_return()[0] == doctest::Approx(0.25));
}

TEST_CASE("validate reports each single-invariant mutation")
{
    const auto base = example_market();

    SUBCASE("correlation out of range")
    {
        MarketSpec spec;
        spec.diffusion.mu = Vector::Constant(2, 0.05);
        spec.diffusion.sigma = Vector::Constant(2, 0.2);
        spec.diffusion.rho.resize(2, 2);
        spec.diffusion.rho << 1, 2, 2, 1;
        spec.diffusion.r = 0.01;
        const auto report = validate(spec);
        CHECK_FALSE(report.valid());
        CHECK(mentions(report, "correlation out of range"));
    }
    SUBCASE("net return below -1")
    {
        auto spec = base;
        spec.jumps.atoms[1].x[0] = -1.5;
        CHECK(mentions(validate(spec), "net return below -1"));
    }
    SUBCASE("probabilities")
    {
        auto spec = base;
        spec.jumps.atoms[0].p = 0.7;
        CHECK(mentions(validate(spec), "sum to"));
        spec.jumps.atoms[0].p = 0.0;
        CHECK(mentions(validate(spec), "probability must be > 0"));
    }
    SUBCASE("empty atoms with jumps")
    {
        auto spec = base;
        spec.jumps.atoms.clear();
        CHECK(mentions(validate(spec), "atom list is empty"));
        spec.jumps.lambda = 0.0;
        CHECK(validate(spec).valid());
    }
    SUBCASE("negative lambda") {
        auto spec = base;
        spec.jumps.lambda = -1.0;
        CHECK_FALSE(validate(spec).valid());
    }
    SUBCASE("negative volatility")
    {
        auto spec = base;
        spec.diffusion.sigma[0] = -0.15;
        CHECK(mentions(validate(spec), "non-negative"));
    }
    SUBCASE("asymmetric correlation")
    {
        MarketSpec spec;
        spec.diffusion.mu = Vector::Constant(2, 0.05);
        spec.diffusion.sigma = Vector::Constant(2, 0.2);
        spec.diffusion.rho.resize(2, 2);
        spec.diffusion.rho << 1, 0.3, 0.2, 1;
        CHECK(mentions(validate(spec), "not symmetric"));
    }
    SUBCASE("singular covariance without jump curvature")
    {
        MarketSpec spec;
        spec.diffusion.mu = Vector::Constant(2, 0.05);
        spec.diffusion.sigma = Vector::Constant(2, 0.2);
        spec.diffusion.rho = Matrix::Ones(2, 2);
        CHECK(mentions(validate(spec), "not positive definite"));
    }
    SUBCASE("atom dimension")
    {
        auto spec = base;
        spec.jumps.atoms[0].x = Vector::Ones(2);
        CHECK_FALSE(validate(spec).valid());
    }
}

TEST_CASE("pure-jump markets validate when jumps span the space")
{
    auto spec = example_market();
    spec.diffusion.sigma[0] = 0.0;
    spec.diffusion.mu[0] = 0.0;
    spec.diffusion.r = 0.0;
    CHECK(spec.pure_jump());
    CHECK(validate(spec).valid());
    spec.jumps.lambda = 0.0;
    CHECK_FALSE(validate(spec).valid());
}

TEST_CASE("random markets validate and covariance stays positive definite")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto spec = random_market(rng, 1 + trial % 3);
        const auto report = validate(spec);
        INFO(report.summary());
        CHECK(report.valid());
        CHECK(is_positive_definite(covariance_matrix(spec.diffusion.sigma, spec.diffusion.rho)));
    }
}

TEST_CASE("is_positive_definite")
{
    CHECK(is_positive_definite(Matrix::Identity(3, 3)));
    CHECK_FALSE(is_positive_definite(Matrix::Ones(2, 2)));
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    CHECK_FALSE(is_positive_definite(m));
    m << 1, 0, 0, 1e-13;
    CHECK_FALSE(is_positive_definite(m));
}
