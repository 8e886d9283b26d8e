#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pmq/geometry.hpp"
#include "pmq/step_profile.hpp"

namespace pmq {

enum class Axis { Vertical, Horizontal };

inline Axis other(Axis a) { return a == Axis::Vertical ? Axis::Horizontal : Axis::Vertical; }

/// 2-d tree (alternating-axis binary search tree) built by sequential
/// insertion. A Vertical node splits its cell at x = point.x, a Horizontal
/// one at y = point.y; child 0 is the low side (left / bottom), child 1 the
/// high side. Query lines are always vertical, so a Vertical root gives the
/// "parallel" cost flavour and a Horizontal root the "perpendicular" one.
class KdTree {
public:
    static constexpr std::int32_t kNone = -1;

    struct Node {
        Point2 point;
        Cell cell;
        Axis axis = Axis::Vertical;
        std::array<std::int32_t, 2> child{kNone, kNone};
        std::int32_t parent = kNone;
        std::int32_t depth = 0;
    };

    KdTree() = default;

    static KdTree build(const std::vector<Point2>& points, Axis rootAxis, const Cell& box = kUnitSquare);

    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    Axis rootAxis() const { return rootAxis_; }
    const Cell& box() const { return box_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const Node& node(std::size_t k) const { return nodes_[k]; }

    /// Points of the subtree rooted at node k, in insertion order.
    std::vector<Point2> subtree_points(std::size_t k) const;

private:
    Axis rootAxis_ = Axis::Vertical;
    Cell box_ = kUnitSquare;
    std::vector<Node> nodes_;
};

/// C_n^= (s): requires a Vertical root, else AxisMismatchError.
std::int64_t cost_parallel(const KdTree& tree, double s);

/// C_n^perp (s): requires a Horizontal root, else AxisMismatchError.
std::int64_t cost_perp(const KdTree& tree, double s);

/// Node-visit count at x = s for either root axis.
std::int64_t kd_cost(const KdTree& tree, double s);

/// kd_cost of the trees formed by the first sizes[k] insertions.
std::vector<std::int64_t> kd_prefix_costs(const KdTree& tree, double s, const std::vector<std::size_t>& sizes);

StepProfile kd_profile(const KdTree& tree);

/// Checks, for a Horizontal root, that the root cost splits into 1 plus the
/// parallel costs of the two subtrees, each rebuilt from its own points in
/// its own cell. Throws EmptyTreeError / AxisMismatchError.
bool decomposition_check(const KdTree& tree, double s);

/// Vertical-root analogue: cost_parallel(s) = 1 + cost_perp of the child
/// whose x-extent contains s, rebuilt in its own cell.
bool decomposition_check_parallel(const KdTree& tree, double s);

}  // namespace pmq
