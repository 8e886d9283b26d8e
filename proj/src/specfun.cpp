#include "pmq/specfun.hpp"

#include <cmath>

#include "pmq/errors.hpp"

namespace pmq {

double gamma(double x)
{
    if (!(x > 0.0)) {
        throw DomainError("gamma: argument must be positive");
    }
    return std::tgamma(x);
}

double log_gamma(double x)
{
    if (!(x > 0.0)) {
        throw DomainError("log_gamma: argument must be positive");
    }
    return std::lgamma(x);
}

double beta_fn(double a, double b)
{
    if (!(a > 0.0) || !(b > 0.0)) {
        throw DomainError("beta_fn: arguments must be positive");
    }
    // tgamma overflows past 171; the ratio is fine well before that.
    if (a + b < 160.0) {
        return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
    }
    return std::exp(log_beta_fn(a, b));
}

double log_beta_fn(double a, double b)
{
    if (!(a > 0.0) || !(b > 0.0)) {
        throw DomainError("log_beta_fn: arguments must be positive");
    }
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double beta_exponent()
{
    static const double value = (std::sqrt(17.0) - 3.0) / 2.0;
    return value;
}

double h_squared(double s)
{
    if (!(s >= 0.0 && s <= 1.0)) {
        throw DomainError("h: argument outside [0, 1]");
    }
    // Symmetric by construction: s (1 - s) and (1 - s) s round identically.
    const double p = s <= 0.5 ? s * (1.0 - s) : (1.0 - s) * s;
    return std::pow(p, beta_exponent());
}

double h(double s)
{
    if (!(s >= 0.0 && s <= 1.0)) {
        throw DomainError("h: argument outside [0, 1]");
    }
    const double p = s <= 0.5 ? s * (1.0 - s) : (1.0 - s) * s;
    return std::pow(p, 0.5 * beta_exponent());
}

namespace {

ConstantSet compute_constants()
{
    ConstantSet c{};
    const double b = beta_exponent();
    c.beta = b;

    const double g2b2 = gamma(2.0 * b + 2.0);
    const double gb1 = gamma(b + 1.0);
    const double gb2 = gamma(b + 2.0);
    const double ghalf = gamma(0.5 * b + 1.0);

    const double bFull = beta_fn(b + 1.0, b + 1.0);
    const double bHalf = beta_fn(0.5 * b + 1.0, 0.5 * b + 1.0);

    c.kappa = g2b2 / (2.0 * gb1 * gb1 * gb1);
    c.K1 = g2b2 * gb2 / (2.0 * gb1 * gb1 * gb1 * ghalf * ghalf);
    c.c2 = 2.0 * bFull * (2.0 * b + 1.0) / (3.0 * (1.0 - b));
    c.K2 = c.c2 - 1.0;
    c.K3 = c.c2 * bFull - bHalf * bHalf;
    c.K4 = c.K1 * c.K1 * c.K3;
    c.meanZxi = ghalf * ghalf / gb2;

    const double ratio = g2b2 / (gb1 * gb1 * gb1);
    c.kappaPar = 13.0 * (3.0 - 5.0 * b) / 4.0 * ratio;
    c.kappaPerp = 13.0 * (2.0 * b - 1.0) / 2.0 * ratio;
    c.K1Par = c.kappaPar / bHalf;
    c.K1Perp = c.kappaPerp / bHalf;

    const double q = (b + 1.0) / 2.0;
    c.K2Perp = 2.0 * c.c2 / (2.0 * b + 1.0) * q * q + 2.0 * bFull * q * q - 1.0;
    c.K3Perp = (2.0 * c.c2 / (2.0 * b + 1.0) + 2.0 * bFull) * q * q * bFull - bHalf * bHalf;
    c.K4Par = c.K1Par * c.K1Par * c.K3;
    c.K4Perp = c.K1Perp * c.K1Perp * c.K3Perp;
    return c;
}

}  // namespace

const ConstantSet& constants()
{
    static const ConstantSet cached = compute_constants();
    return cached;
}

std::vector<std::pair<std::string, double>> constant_fields(const ConstantSet& c)
{
    return {
        {"beta", c.beta},         {"kappa", c.kappa},         {"K1", c.K1},
        {"c2", c.c2},             {"K2", c.K2},               {"K3", c.K3},
        {"K4", c.K4},             {"meanZxi", c.meanZxi},     {"kappaPar", c.kappaPar},
        {"kappaPerp", c.kappaPerp}, {"K1Par", c.K1Par},       {"K1Perp", c.K1Perp},
        {"K2Perp", c.K2Perp},     {"K3Perp", c.K3Perp},       {"K4Par", c.K4Par},
        {"K4Perp", c.K4Perp},
    };
}

}  // namespace pmq
