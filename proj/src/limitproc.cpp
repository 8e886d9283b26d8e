#include "pmq/limitproc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pmq/errors.hpp"
#include "pmq/rng.hpp"
#include "pmq/specfun.hpp"

namespace pmq {

namespace {

constexpr std::uint32_t kLabelTag0 = 0x9E3779B9u;
constexpr std::uint32_t kLabelTag1 = 0xBB67AE85u;

void check_depth(int n, int cap)
{
    if (n < 0) throw DomainError("depth must be nonnegative");
    if (n > cap) throw CapError("depth " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}

void check_unit(double s)
{
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("query position outside [0, 1]");
}

void check_label(double x)
{
    if (!(x > 0.0 && x < 1.0)) throw DomainError("label outside (0, 1)");
}

}  // namespace

LimitEnvironment::LimitEnvironment(std::uint64_t seed, std::uint64_t streamIndex, std::map<Address, Labels> pinned)
    : seed_(seed), stream_(streamIndex), pinned_(std::move(pinned))
{
}

Labels LimitEnvironment::labels(const Address& a, bool withW) const
{
    if (!pinned_.empty()) {
        if (auto it = pinned_.find(a); it != pinned_.end()) return it->second;
    }
    const Philox4x32::Key key{static_cast<std::uint32_t>(seed_) ^ kLabelTag0,
                              static_cast<std::uint32_t>(seed_ >> 32) ^ kLabelTag1};
    auto block = [&](std::uint32_t b) {
        const Philox4x32::Counter ctr{static_cast<std::uint32_t>(a.code),
                                      static_cast<std::uint32_t>((a.code >> 32) & 0xFFFFu) |
                                          (static_cast<std::uint32_t>(a.depth) << 16) | (b << 24),
                                      static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
        return Philox4x32::apply(ctr, key);
    };
    auto join = [](std::uint32_t lo, std::uint32_t hi) { return (static_cast<std::uint64_t>(hi) << 32) | lo; };
    const auto b0 = block(0);
    Labels out;
    out.U = to_unit_open(join(b0[0], b0[1]));
    out.V = to_unit_open(join(b0[2], b0[3]));
    if (withW) {
        const auto b1 = block(1);
        out.W = to_unit_open(join(b1[0], b1[1]));
    }
    return out;
}

double g_apply_eq(double x, double y, double z, const std::array<RealFunction, 4>& f, double s)
{
    check_label(x);
    check_label(y);
    check_label(z);
    check_unit(s);
    const double b = beta_exponent();
    if (s < x) {
        const double t = s / x;
        return std::pow(x * y, b) * f[0](t) + std::pow(x * (1.0 - y), b) * f[1](t);
    }
    const double t = (s - x) / (1.0 - x);
    return std::pow((1.0 - x) * z, b) * f[2](t) + std::pow((1.0 - x) * (1.0 - z), b) * f[3](t);
}

double g_apply(double x, double y, const std::array<RealFunction, 4>& f, double s)
{
    return g_apply_eq(x, y, y, f, s);
}

namespace {

struct LevelWalker {
    const LimitEnvironment& env;
    LimitVariant variant;
    int n;
    bool allLevels;
    double b;
    std::vector<double> sums;

    void visit(const Address& a, double t, double logArea)
    {
        if (allLevels || a.depth == n) {
            sums[static_cast<std::size_t>(a.depth)] += std::exp(b * logArea) * h(t);
        }
        if (a.depth == n) return;
        const bool kd = variant == LimitVariant::Kd;
        const Labels L = env.labels(a, false);
        if (t < L.U) {
            const double tc = std::min(t / L.U, 1.0);
            const double lx = std::log(L.U);
            visit(a.child(0), tc, logArea + lx + std::log(L.V));
            visit(a.child(1), tc, logArea + lx + std::log1p(-L.V));
        } else {
            const double v = kd ? env.labels(a, true).W : L.V;
            const double tc = std::clamp((t - L.U) / (1.0 - L.U), 0.0, 1.0);
            const double lx = std::log1p(-L.U);
            visit(a.child(2), tc, logArea + lx + std::log(v));
            visit(a.child(3), tc, logArea + lx + std::log1p(-v));
        }
    }
};

std::vector<double> walk(int n, double s, const LimitEnvironment& env, LimitVariant variant, bool allLevels)
{
    check_depth(n, kMaxLimitDepth);
    check_unit(s);
    LevelWalker w{env, variant, n, allLevels, beta_exponent(), std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0)};
    w.visit(Address{}, s, 0.0);
    return w.sums;
}

}  // namespace

double simulate_pointwise(int n, double s, const LimitEnvironment& env)
{
    return walk(n, s, env, LimitVariant::Quad, false).back();
}

double simulate_pointwise_2d(int n, double s, const LimitEnvironment& env)
{
    return walk(n, s, env, LimitVariant::Kd, false).back();
}

std::vector<double> simulate_levels(int n, double s, const LimitEnvironment& env, LimitVariant variant)
{
    return walk(n, s, env, variant, true);
}

std::vector<double> simulate_path(int n, const std::vector<double>& grid, const LimitEnvironment& env,
                                  LimitVariant variant)
{
    if (grid.size() > kMaxPathGrid) {
        throw CapError("path grid larger than " + std::to_string(kMaxPathGrid) + " points");
    }
    std::vector<double> out;
    out.reserve(grid.size());
    for (double s : grid) out.push_back(walk(n, s, env, variant, false).back());
    return out;
}

std::vector<HitBox> hit_boxes(int n, double s, const LimitEnvironment& env)
{
    check_depth(n, kMaxLimitDepth);
    check_unit(s);
    std::vector<HitBox> out;
    struct Frame {
        Address a;
        Cell c;
        double logArea;
    };
    std::vector<Frame> stack{{Address{}, kUnitSquare, 0.0}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.a.depth == n) {
            out.push_back({f.c, n, f.logArea});
            continue;
        }
        const Labels L = env.labels(f.a, false);
        const double t = std::clamp((s - f.c.x0) / f.c.width(), 0.0, 1.0);
        const double xs = f.c.x0 + L.U * f.c.width();
        const double ys = f.c.y0 + L.V * f.c.height();
        const bool right = !(t < L.U);
        const double lx = right ? std::log1p(-L.U) : std::log(L.U);
        const Cell bottom{right ? xs : f.c.x0, right ? f.c.x1 : xs, f.c.y0, ys};
        const Cell top{bottom.x0, bottom.x1, ys, f.c.y1};
        const int base = right ? 2 : 0;
        // pushed in reverse so that children pop in address order
        stack.push_back({f.a.child(base + 1), top, f.logArea + lx + std::log1p(-L.V)});
        stack.push_back({f.a.child(base), bottom, f.logArea + lx + std::log(L.V)});
    }
    return out;
}

Diagnostics diagnostics(int n, const LimitEnvironment& env)
{
    check_depth(n, kMaxDiagnosticsDepth);
    // Vertical boundaries of the level-n cells are 0, 1 and every split
    // x-coordinate above level n.
    Diagnostics out{0.0, 1.0};
    std::vector<double> bounds{0.0, 1.0};
    struct Frame {
        Address a;
        double x0, x1;
    };
    std::vector<Frame> stack{{Address{}, 0.0, 1.0}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.a.depth == n) {
            out.maxWidth = std::max(out.maxWidth, f.x1 - f.x0);
            continue;
        }
        const double xs = f.x0 + env.labels(f.a, false).U * (f.x1 - f.x0);
        bounds.push_back(xs);
        for (int k = 0; k < 4; ++k) stack.push_back({f.a.child(k), k < 2 ? f.x0 : xs, k < 2 ? xs : f.x1});
    }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
    for (std::size_t i = 1; i < bounds.size(); ++i) out.minGap = std::min(out.minGap, bounds[i] - bounds[i - 1]);
    return out;
}

int fill_up_level(const QuadTree& tree)
{
    if (tree.empty()) return 0;
    std::vector<std::uint64_t> perDepth;
    for (const auto& nd : tree.nodes()) {
        const auto d = static_cast<std::size_t>(nd.depth);
        if (perDepth.size() <= d) perDepth.resize(d + 1, 0);
        ++perDepth[d];
    }
    int level = 0;
    std::uint64_t full = 1;
    while (static_cast<std::size_t>(level) < perDepth.size() && perDepth[static_cast<std::size_t>(level)] == full) {
        ++level;
        if (level >= 31) break;
        full *= 4;
    }
    return level;
}

}  // namespace pmq
