#pragma once

#include <cstddef>
#include <vector>

namespace pmq {

/// Moments c_1..c_M of a positive unit-mean variable (c_0 = 1 implicitly).
class MomentTable {
public:
    MomentTable() = default;
    explicit MomentTable(std::vector<double> values);

    /// c_m for 0 <= m <= maxOrder(); c_0 = 1.
    double operator()(int m) const;
    int maxOrder() const { return static_cast<int>(values_.size()); }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

/// Moments of Psi = Z(s) / h(s) from the moment recursion; maxOrder in [1, 60].
MomentTable psi_moments(int maxOrder);

/// Moments of the 2-d tree marginal factor Xi_perp; maxOrder in [1, 60].
MomentTable xi_perp_moments(int maxOrder);

/// Samples of a function on a strictly increasing grid of [0, 1] that
/// includes both endpoints.
struct GridFunction {
    std::vector<double> grid;
    std::vector<double> values;

    /// Throws DomainError when the invariants do not hold.
    void validate() const;

    /// Interpolated value. Inside each cell the interpolant is affine in
    /// h(u)^2 rather than in u, so multiples of h^2 (plus constants) are
    /// reproduced exactly; cells where h^2 is not monotone fall back to
    /// ordinary linear interpolation.
    double operator()(double u) const;
};

/// `points` uniformly spaced grid values 0, 1/(points-1), ..., 1.
std::vector<double> uniform_grid(std::size_t points);

/// Samples f at every grid point.
template <class F>
GridFunction sample_grid(const std::vector<double>& grid, F&& f)
{
    GridFunction g{grid, {}};
    g.values.reserve(grid.size());
    for (double u : grid) g.values.push_back(f(u));
    return g;
}

inline constexpr std::size_t kMinOperatorGrid = 64;
inline constexpr std::size_t kDefaultOperatorGrid = 513;
inline constexpr int kMaxSecondMomentIterations = 30;

/// Second-moment integral operator
///   (Kf)(s) = 2/(2b+1) [ int_s^1 x^{2b} f(s/x) dx + int_0^s (1-x)^{2b} f((1-s)/(1-x)) dx ]
///             + 2 B(b+1, b+1) h(s)^2 / (b+1)
/// evaluated at each grid point. Throws CapError below kMinOperatorGrid points.
GridFunction apply_K(const GridFunction& f);

/// m_n = K^n(h^2) = E[Z_n(s)^2] on the given grid; n in [0, 30].
GridFunction second_moment_iterates(int n, const std::vector<double>& grid);

}  // namespace pmq
