#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pmq/geometry.hpp"
#include "pmq/quadtree.hpp"

namespace pmq {

/// Node of the infinite quaternary tree: `code` holds the child digits
/// (0..3, most significant first) in base 4.
struct Address {
    int depth = 0;
    std::uint64_t code = 0;

    Address child(int k) const { return {depth + 1, code * 4 + static_cast<std::uint64_t>(k)}; }
    friend auto operator<=>(const Address&, const Address&) = default;
};

struct Labels {
    double U = 0.5;
    double V = 0.5;
    double W = 0.5;  ///< only used by the 2-d tree variant
};

inline constexpr int kMaxLimitDepth = 24;
inline constexpr int kMaxDiagnosticsDepth = 12;
inline constexpr std::size_t kMaxPathGrid = 10000;

/// Random labels (U_v, V_v, W_v) for every address, generated on demand.
///
/// The labels of an address are a pure function of (seed, stream, address):
/// one Philox block per label pair, keyed on the seed and counting over the
/// address. Individual addresses can be pinned to fixed labels.
class LimitEnvironment {
public:
    LimitEnvironment(std::uint64_t seed, std::uint64_t streamIndex, std::map<Address, Labels> pinned = {});

    /// U and V always; W too when `withW` (costs a second block).
    Labels labels(const Address& a, bool withW = true) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t streamIndex() const { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::map<Address, Labels> pinned_;
};

using RealFunction = std::function<double(double)>;

/// G(x, y, f1..f4)(s): one level of the quadtree recursion applied to four
/// functions on [0, 1].
double g_apply(double x, double y, const std::array<RealFunction, 4>& f, double s);

/// 2-d tree analogue with an independent vertical label z on the right half.
double g_apply_eq(double x, double y, double z, const std::array<RealFunction, 4>& f, double s);

enum class LimitVariant { Quad, Kd };

/// Z_n(s) as a sum over the 2^n level-n boxes met by the line x = s.
double simulate_pointwise(int n, double s, const LimitEnvironment& env);

/// Z_0(s), ..., Z_n(s) from one traversal; entry k equals
/// simulate_pointwise(k, s, env) bit for bit.
std::vector<double> simulate_levels(int n, double s, const LimitEnvironment& env,
                                    LimitVariant variant = LimitVariant::Quad);

/// Z_n on a grid of at most kMaxPathGrid points, one environment.
std::vector<double> simulate_path(int n, const std::vector<double>& grid, const LimitEnvironment& env,
                                  LimitVariant variant = LimitVariant::Quad);

/// Z_n^=(s): the right-hand children take their vertical split from W.
double simulate_pointwise_2d(int n, double s, const LimitEnvironment& env);

struct HitBox {
    Cell cell;
    int depth = 0;
    double logArea = 0.0;
};

/// The level-n boxes met by x = s, in address order.
std::vector<HitBox> hit_boxes(int n, double s, const LimitEnvironment& env);

struct Diagnostics {
    double maxWidth = 1.0;  ///< W_n
    double minGap = 1.0;    ///< L_n
};

/// Widest level-n cell and the closest pair of distinct vertical
/// boundaries; n <= kMaxDiagnosticsDepth.
Diagnostics diagnostics(int n, const LimitEnvironment& env);

/// Largest n such that every depth < n of the tree is complete.
int fill_up_level(const QuadTree& tree);

}  // namespace pmq
