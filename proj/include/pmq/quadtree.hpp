#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pmq/geometry.hpp"
#include "pmq/rng.hpp"
#include "pmq/step_profile.hpp"

namespace pmq {

/// Point quadtree built by sequential insertion.
///
/// Node k holds the k-th inserted point. Children are numbered
/// 0: bottom-left, 1: top-left, 2: bottom-right, 3: top-right; a point with
/// x >= the split goes right and y >= the split goes up. Every node's
/// descendants were inserted after it, so the first m nodes form the tree
/// of the first m points.
class QuadTree {
public:
    static constexpr std::int32_t kNone = -1;

    struct Node {
        Point2 point;
        Cell cell;
        std::array<std::int32_t, 4> child{kNone, kNone, kNone, kNone};
        std::int32_t parent = kNone;
        std::int32_t depth = 0;
    };

    QuadTree() = default;

    /// Inserts points in sequence order. Throws GeneralPositionError on
    /// repeated coordinates.
    static QuadTree build(const std::vector<Point2>& points, const Cell& box = kUnitSquare);

    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    const Cell& box() const { return box_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const Node& node(std::size_t k) const { return nodes_[k]; }

    /// Child slot (0..3) a point falls into below node k.
    static int quadrant(const Node& n, double x, double y);

private:
    Cell box_ = kUnitSquare;
    std::vector<Node> nodes_;
};

/// n i.i.d. uniform points in `box`, indexed in draw order.
std::vector<Point2> sample_uniform_points(std::size_t n, RngStream& rng, const Cell& box = kUnitSquare);

/// Partial match cost: number of nodes whose cell meets the line x = s,
/// i.e. the nodes visited by the recursive search.
std::int64_t cost(const QuadTree& tree, double s);

/// Costs of the subtrees formed by the first sizes[k] insertions, in one pass.
/// sizes larger than the tree are clamped.
std::vector<std::int64_t> prefix_costs(const QuadTree& tree, double s, const std::vector<std::size_t>& sizes);

/// Number of horizontal split segments crossing x = s. Segment extents are
/// rebuilt from ancestor coordinates, independently of the stored cells.
std::int64_t horizontal_crossings(const QuadTree& tree, double s);

/// Exact cost profile s -> cost(tree, s) over the x-range of the root box.
StepProfile profile(const QuadTree& tree);

/// Profile of the tree formed by the first `prefix` insertions.
StepProfile prefix_profile(const QuadTree& tree, std::size_t prefix);

struct Supremum {
    std::int64_t maxCost = 0;
    double from = 0.0;  ///< first maximising segment [from, to)
    double to = 1.0;
};

Supremum supremum(const QuadTree& tree);

/// Sizes of the four root subtrees, in child order. Throws EmptyTreeError.
std::array<std::size_t, 4> subtree_sizes(const QuadTree& tree);

/// Poisson(mean) variate.
std::uint64_t sample_poisson(double mean, RngStream& rng);

/// Quadtree on a Poisson(t) number of uniform points in the unit square,
/// inserted in arrival order.
QuadTree sample_poisson_tree(double t, RngStream& rng);

/// Arrival-ordered Poisson points with unit intensity on
/// [-eps, 1] x [0, 1] x [0, t].
std::vector<Point2> sample_extended_poisson_points(double t, double eps, RngStream& rng);

struct CoupledCosts {
    std::int64_t baseCost = 0;      ///< tree of the points inside [0,1]^2
    std::int64_t extendedCost = 0;  ///< tree of all points, box [-eps,1] x [0,1]
};

/// Costs at x = s of two quadtrees driven by one point sample: the base
/// tree drops points with x < 0; the extended tree keeps them. Under this
/// coupling baseCost <= extendedCost pathwise.
CoupledCosts coupled_extension_cost(const std::vector<Point2>& points, double eps, double s);

}  // namespace pmq
