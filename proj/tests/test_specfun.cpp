#include "doctest.h"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <random>

#include "pmq/errors.hpp"
#include "pmq/specfun.hpp"

using namespace pmq;

namespace {

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

}  // namespace

TEST_CASE("gamma at classical points")
{
    CHECK(pmq::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rel_close(pmq::gamma(0.5), std::sqrt(M_PI), 1e-14));
    CHECK(rel_close(pmq::gamma(4.0), 6.0, 1e-14));
    CHECK_THROWS_AS(pmq::gamma(0.0), DomainError);
    CHECK_THROWS_AS(pmq::gamma(-1.5), DomainError);
}

TEST_CASE("gamma recurrence on random arguments")
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.5, 9.0);
    for (int i = 0; i < 100; ++i) {
        const double x = u(gen);
        CHECK(rel_close(pmq::gamma(x + 1.0), x * pmq::gamma(x), 1e-12));
    }
}

TEST_CASE("gamma reflection")
{
    for (double x : {0.55, 0.6, 0.7, 0.8, 0.9, 0.95}) {
        CHECK(rel_close(pmq::gamma(x) * pmq::gamma(1.0 - x), M_PI / std::sin(M_PI * x), 1e-12));
    }
}

TEST_CASE("beta function")
{
    CHECK(rel_close(beta_fn(1.0, 1.0), 1.0, 1e-14));
    CHECK(rel_close(beta_fn(2.0, 2.0), 1.0 / 6.0, 1e-14));
    CHECK_THROWS_AS(beta_fn(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(beta_fn(1.0, -2.0), DomainError);

    const double b = beta_exponent();
    boost::math::quadrature::tanh_sinh<double> ts;
    const double q = ts.integrate([b](double t) { return std::pow(t * (1.0 - t), b); }, 0.0, 1.0);
    CHECK(std::abs(beta_fn(b + 1.0, b + 1.0) - q) < 1e-9);
    CHECK(std::abs(std::exp(log_beta_fn(b + 1.0, b + 1.0)) - q) < 1e-9);
}

TEST_CASE("cost exponent")
{
    const double b = beta_exponent();
    // (sqrt(17) - 3) / 2 to 20 digits
    CHECK(std::abs(b - 0.56155281280883027491) < 1e-15);
    CHECK(std::abs((b + 1.0) * (b + 2.0) - 4.0) < 1e-14);
    CHECK(std::abs(b * b + 3.0 * b - 2.0) < 1e-14);
    CHECK(b > 0.0);
    CHECK(b < 1.0);
}

TEST_CASE("profile function h")
{
    CHECK(h(0.0) == 0.0);
    CHECK(h(1.0) == 0.0);
    CHECK(std::abs(h(0.5) - std::pow(2.0, -beta_exponent())) < 1e-15);
    CHECK(std::abs(h(0.5) - 0.67757248099375221804) < 1e-15);
    CHECK(h(0.25) == h(0.75));
    CHECK(h_squared(0.375) == h_squared(0.625));
    CHECK_THROWS_AS(h(-0.01), DomainError);
    CHECK_THROWS_AS(h(1.01), DomainError);
    CHECK_THROWS_AS(h_squared(2.0), DomainError);
    for (int i = 0; i <= 1000; ++i) {
        const double s = i / 1000.0;
        CHECK(h(s) <= h(0.5));
        CHECK(std::abs(h(s) - h(1.0 - s)) <= 1e-14 * h(0.5));
    }
}

TEST_CASE("reference constant values")
{
    const auto& c = constants();
    CHECK(std::abs(c.K4 - 0.447363034) < 1e-6);
    CHECK(std::abs(c.K4Par - 0.69848) < 1e-4);
    CHECK(std::abs(c.K4Perp - 0.77754) < 1e-4);
}

TEST_CASE("constant set invariants")
{
    const auto& c = constants();
    const double b = c.beta;
    const double bFull = beta_fn(b + 1.0, b + 1.0);
    const double bHalf = beta_fn(b / 2.0 + 1.0, b / 2.0 + 1.0);
    CHECK(std::abs(b * b + 3.0 * b - 2.0) < 1e-14);
    CHECK(rel_close(c.K4, c.K1 * c.K1 * c.K3, 1e-10));
    CHECK(rel_close(c.K4Par, c.K1Par * c.K1Par * c.K3, 1e-10));
    CHECK(rel_close(c.K4Perp, c.K1Perp * c.K1Perp * c.K3Perp, 1e-10));
    CHECK(rel_close(c.kappaPar, 13.0 * (3.0 - 5.0 * b) / 2.0 * c.kappa, 1e-10));
    CHECK(rel_close(c.kappaPerp, 13.0 * (2.0 * b - 1.0) * c.kappa, 1e-10));
    CHECK(rel_close(c.K1Perp, 2.0 / (1.0 + b) * c.K1Par, 1e-10));
    CHECK(rel_close(c.K2, c.c2 - 1.0, 1e-10));
    CHECK(rel_close(c.K3, c.c2 * bFull - bHalf * bHalf, 1e-10));
    CHECK(rel_close(c.meanZxi, bHalf, 1e-10));
    CHECK(rel_close(c.meanZxi, pmq::gamma(b / 2 + 1) * pmq::gamma(b / 2 + 1) / pmq::gamma(b + 2), 1e-10));
}

TEST_CASE("mean of h over a uniform point by quadrature")
{
    boost::math::quadrature::tanh_sinh<double> ts;
    const double q = ts.integrate([](double s) { return h(s); }, 0.0, 1.0);
    CHECK(std::abs(constants().meanZxi - q) < 1e-9);
}

TEST_CASE("constants against extended precision values")
{
    // Evaluated independently with 30-digit arithmetic.
    const auto& c = constants();
    CHECK(rel_close(c.kappa, 1.5950990958297154673, 1e-12));
    CHECK(rel_close(c.K1, 2.7325699913554072937, 1e-12));
    CHECK(rel_close(c.c2, 1.1372856380393226630, 1e-12));
    CHECK(rel_close(c.meanZxi, 0.58373586070105220768, 1e-12));
    CHECK(rel_close(c.K2Perp, 0.0826288457699142448, 1e-10));
}

TEST_CASE("constant field listing")
{
    const auto fields = constant_fields(constants());
    REQUIRE(fields.size() == 16);
    CHECK(fields.front().first == "beta");
    CHECK(fields.back().first == "K4Perp");
    CHECK(fields[6].second == constants().K4);
}
