#include "pmq/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pmq/errors.hpp"
#include "pmq/specfun.hpp"

namespace pmq {

namespace {

constexpr int kMaxMomentOrder = 60;
constexpr int kLogSpaceAbove = 30;

void check_order(int maxOrder)
{
    if (maxOrder < 1) {
        throw DomainError("moment order must be at least 1");
    }
    if (maxOrder > kMaxMomentOrder) {
        throw CapError("moment order capped at " + std::to_string(kMaxMomentOrder));
    }
}

double log_binomial(int m, int l)
{
    return std::lgamma(m + 1.0) - std::lgamma(l + 1.0) - std::lgamma(m - l + 1.0);
}

double binomial(int m, int l)
{
    double r = 1.0;
    for (int i = 1; i <= l; ++i) {
        r = r * (m - l + i) / i;
    }
    return r;
}

// sum_{l=lo}^{hi} C(m,l) B(b l + 1, b (m-l) + 1) c_l c_{m-l}
double convolution(int m, int lo, int hi, const std::vector<double>& c)
{
    const double b = beta_exponent();
    if (m <= kLogSpaceAbove) {
        double sum = 0.0;
        for (int l = lo; l <= hi; ++l) {
            sum += binomial(m, l) * beta_fn(b * l + 1.0, b * (m - l) + 1.0) * c[l] * c[m - l];
        }
        return sum;
    }
    std::vector<double> logs;
    logs.reserve(hi - lo + 1);
    for (int l = lo; l <= hi; ++l) {
        logs.push_back(log_binomial(m, l) + log_beta_fn(b * l + 1.0, b * (m - l) + 1.0) +
                       std::log(c[l]) + std::log(c[m - l]));
    }
    const double top = *std::max_element(logs.begin(), logs.end());
    double sum = 0.0;
    for (double v : logs) sum += std::exp(v - top);
    return std::exp(top) * sum;
}

// c_0..c_maxOrder
std::vector<double> psi_with_zero(int maxOrder)
{
    const double b = beta_exponent();
    std::vector<double> c(maxOrder + 1, 0.0);
    c[0] = 1.0;
    c[1] = 1.0;
    for (int m = 2; m <= maxOrder; ++m) {
        const double pre = (b * m + 1.0) / ((m - 1.0) * (m + 1.0 - 1.5 * b * m));
        c[m] = pre * convolution(m, 1, m - 1, c);
    }
    return c;
}

}  // namespace

MomentTable::MomentTable(std::vector<double> values) : values_(std::move(values)) {}

double MomentTable::operator()(int m) const
{
    if (m == 0) return 1.0;
    if (m < 0 || m > maxOrder()) {
        throw DomainError("moment order out of table range");
    }
    return values_[m - 1];
}

MomentTable psi_moments(int maxOrder)
{
    check_order(maxOrder);
    auto c = psi_with_zero(maxOrder);
    return MomentTable(std::vector<double>(c.begin() + 1, c.end()));
}

MomentTable xi_perp_moments(int maxOrder)
{
    check_order(maxOrder);
    const auto c = psi_with_zero(maxOrder);
    const double q = (beta_exponent() + 1.0) / 2.0;
    std::vector<double> out;
    out.reserve(maxOrder);
    for (int m = 1; m <= maxOrder; ++m) {
        out.push_back(std::pow(q, m) * convolution(m, 0, m, c));
    }
    return MomentTable(std::move(out));
}

void GridFunction::validate() const
{
    if (grid.size() < 2 || grid.size() != values.size()) {
        throw DomainError("grid function: need at least two points and matching lengths");
    }
    if (grid.front() != 0.0 || grid.back() != 1.0) {
        throw DomainError("grid function: grid must include 0 and 1");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw DomainError("grid function: grid must be strictly increasing");
        }
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw DomainError("grid function: non-finite value");
        }
    }
}

namespace {

// Interpolation cell lookup shared by GridFunction and the operator; nodeH2
// caches h^2 at the grid nodes.
double interpolate(const std::vector<double>& grid, const std::vector<double>& values,
                   const std::vector<double>& nodeH2, double u)
{
    u = std::clamp(u, 0.0, 1.0);
    auto it = std::upper_bound(grid.begin(), grid.end(), u);
    std::size_t i = it == grid.begin() ? 0 : static_cast<std::size_t>(it - grid.begin()) - 1;
    if (i + 1 >= grid.size()) i = grid.size() - 2;

    const double a = grid[i];
    const double b = grid[i + 1];
    const double ha = nodeH2[i];
    const double hb = nodeH2[i + 1];
    double t;
    if ((b <= 0.5 || a >= 0.5) && ha != hb) {
        t = (h_squared(u) - ha) / (hb - ha);
    } else {
        t = (u - a) / (b - a);
    }
    return values[i] + (values[i + 1] - values[i]) * t;
}

std::vector<double> node_h2(const std::vector<double>& grid)
{
    std::vector<double> out;
    out.reserve(grid.size());
    for (double g : grid) out.push_back(h_squared(g));
    return out;
}

}  // namespace

double GridFunction::operator()(double u) const
{
    return interpolate(grid, values, node_h2(grid), u);
}

std::vector<double> uniform_grid(std::size_t points)
{
    if (points < 2) {
        throw DomainError("uniform_grid: need at least two points");
    }
    std::vector<double> g(points);
    const double step = 1.0 / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = static_cast<double>(i) * step;
    g.back() = 1.0;
    return g;
}

namespace {

// Absolute error target per integration piece; a point has at most about
// 2 * grid.size() pieces.
constexpr double kPieceTolerance = 1e-12;
constexpr unsigned kMaxBisections = 15;

template <class F>
double integrate(F&& f, double a, double b)
{
    if (!(b > a)) return 0.0;
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    const double first = gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
    if (err <= kPieceTolerance || first == 0.0) return first;
    return gauss_kronrod<double, 15>::integrate(f, a, b, kMaxBisections, kPieceTolerance / std::abs(first));
}

// int_s^1 x^{2b} f(s/x) dx, split where s/x crosses a grid node so every
// piece sees a single interpolation cell.
double inner_integral(const GridFunction& f, const std::vector<double>& nodeH2, double s)
{
    if (s >= 1.0) return 0.0;
    const double twoB = 2.0 * beta_exponent();
    if (s <= 0.0) {
        return f.values.front() / (twoB + 1.0);
    }
    auto integrand = [&](double x) {
        return std::pow(x, twoB) * interpolate(f.grid, f.values, nodeH2, s / x);
    };
    std::vector<double> cuts{s, 1.0};
    for (double g : f.grid) {
        if (g > s && g < 1.0) cuts.push_back(s / g);
    }
    std::sort(cuts.begin(), cuts.end());
    double sum = 0.0;
    for (std::size_t k = 1; k < cuts.size(); ++k) {
        sum += integrate(integrand, cuts[k - 1], cuts[k]);
    }
    return sum;
}

}  // namespace

GridFunction apply_K(const GridFunction& f)
{
    f.validate();
    if (f.grid.size() < kMinOperatorGrid) {
        throw CapError("apply_K: grid needs at least " + std::to_string(kMinOperatorGrid) + " points");
    }
    const double b = beta_exponent();
    const double scale = 2.0 / (2.0 * b + 1.0);
    const double source = 2.0 * beta_fn(b + 1.0, b + 1.0) / (b + 1.0);

    const auto nodeH2 = node_h2(f.grid);
    GridFunction out{f.grid, std::vector<double>(f.grid.size())};
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        const double s = f.grid[i];
        // The second integral is the first one at 1 - s with (1-s)/(1-x) = t/y, y = 1 - x.
        const double right = inner_integral(f, nodeH2, s);
        const double left = s > 0.0 ? inner_integral(f, nodeH2, 1.0 - s) : 0.0;
        out.values[i] = scale * (right + left) + source * h_squared(s);
    }
    return out;
}

GridFunction second_moment_iterates(int n, const std::vector<double>& grid)
{
    if (n < 0) {
        throw DomainError("second_moment_iterates: n must be nonnegative");
    }
    if (n > kMaxSecondMomentIterations) {
        throw CapError("second_moment_iterates: at most 30 iterations");
    }
    GridFunction m = sample_grid(grid, [](double u) { return h_squared(u); });
    m.validate();
    for (int k = 0; k < n; ++k) {
        m = apply_K(m);
    }
    return m;
}

}  // namespace pmq
