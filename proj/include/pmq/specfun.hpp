#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pmq {

/// Gamma function for x > 0. Throws DomainError otherwise.
double gamma(double x);

/// log Gamma for x > 0.
double log_gamma(double x);

/// Euler Beta integral B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
double beta_fn(double a, double b);

/// log B(a, b); stays finite where beta_fn would underflow.
double log_beta_fn(double a, double b);

/// The cost exponent (sqrt(17) - 3) / 2, the root of b^2 + 3b - 2 = 0 in (0, 1).
double beta_exponent();

/// Mean profile shape (s (1 - s))^(beta / 2) on [0, 1].
double h(double s);

/// h(s)^2 = (s (1 - s))^beta.
double h_squared(double s);

/// Constants for partial match costs in quadtrees and 2-d trees.
///
/// Names follow the usual notation: kappa and the K's for quadtrees,
/// *Par / *Perp for 2-d trees whose root split is parallel / perpendicular
/// to the query line.
struct ConstantSet {
    double beta;
    double kappa;      ///< E[C_n(xi)] ~ kappa n^beta
    double K1;         ///< E[C_n(s)] ~ K1 h(s) n^beta
    double c2;         ///< E[Z(s)^2] = c2 h(s)^2
    double K2;         ///< Var Z(s) = K2 h(s)^2
    double K3;         ///< Var Z(xi)
    double K4;         ///< Var C_n(xi) ~ K4 n^(2 beta)
    double meanZxi;    ///< E[Z(xi)]
    double kappaPar;
    double kappaPerp;
    double K1Par;
    double K1Perp;
    double K2Perp;
    double K3Perp;
    double K4Par;
    double K4Perp;
};

/// All constants, computed once from their closed forms.
const ConstantSet& constants();

/// (name, value) pairs in declaration order, for printing.
std::vector<std::pair<std::string, double>> constant_fields(const ConstantSet& c);

}  // namespace pmq
