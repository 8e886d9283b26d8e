#include "pmq/kdtree.hpp"

#include "pmq/errors.hpp"

namespace pmq {

namespace {

int side(const KdTree::Node& n, double x, double y)
{
    return n.axis == Axis::Vertical ? (x >= n.point.x ? 1 : 0) : (y >= n.point.y ? 1 : 0);
}

}  // namespace

KdTree KdTree::build(const std::vector<Point2>& points, Axis rootAxis, const Cell& box)
{
    check_general_position(points, box);
    KdTree t;
    t.rootAxis_ = rootAxis;
    t.box_ = box;
    t.nodes_.reserve(points.size());
    for (const auto& p : points) {
        if (t.nodes_.empty()) {
            t.nodes_.push_back({p, box, rootAxis});
            continue;
        }
        std::int32_t at = 0;
        for (;;) {
            const int sd = side(t.nodes_[at], p.x, p.y);
            const std::int32_t next = t.nodes_[at].child[sd];
            if (next == kNone) {
                const Node& parent = t.nodes_[at];
                Cell c = parent.cell;
                if (parent.axis == Axis::Vertical) {
                    (sd == 1 ? c.x0 : c.x1) = parent.point.x;
                } else {
                    (sd == 1 ? c.y0 : c.y1) = parent.point.y;
                }
                const auto id = static_cast<std::int32_t>(t.nodes_.size());
                t.nodes_.push_back({p, c, other(parent.axis), {kNone, kNone}, at, parent.depth + 1});
                t.nodes_[at].child[sd] = id;
                break;
            }
            at = next;
        }
    }
    return t;
}

std::vector<Point2> KdTree::subtree_points(std::size_t k) const
{
    std::vector<bool> inside(nodes_.size(), false);
    inside[k] = true;
    std::vector<Point2> out{nodes_[k].point};
    for (std::size_t j = k + 1; j < nodes_.size(); ++j) {
        const auto parent = nodes_[j].parent;
        if (parent != kNone && inside[static_cast<std::size_t>(parent)]) {
            inside[j] = true;
            out.push_back(nodes_[j].point);
        }
    }
    return out;
}

std::vector<std::int64_t> kd_prefix_costs(const KdTree& tree, double s, const std::vector<std::size_t>& sizes)
{
    if (!(s >= tree.box().x0 && s <= tree.box().x1)) {
        throw DomainError("query line outside the root box");
    }
    std::vector<std::int64_t> out(sizes.size(), 0);
    if (tree.empty()) return out;
    std::vector<std::int32_t> stack{0};
    while (!stack.empty()) {
        const auto at = stack.back();
        stack.pop_back();
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            if (static_cast<std::size_t>(at) < sizes[k]) ++out[k];
        }
        const auto& n = tree.node(at);
        if (n.axis == Axis::Vertical) {
            const auto c = n.child[s >= n.point.x ? 1 : 0];
            if (c != KdTree::kNone) stack.push_back(c);
        } else {
            for (auto c : n.child) {
                if (c != KdTree::kNone) stack.push_back(c);
            }
        }
    }
    return out;
}

std::int64_t kd_cost(const KdTree& tree, double s)
{
    return kd_prefix_costs(tree, s, {tree.size()}).front();
}

std::int64_t cost_parallel(const KdTree& tree, double s)
{
    if (tree.rootAxis() != Axis::Vertical) {
        throw AxisMismatchError("cost_parallel needs a vertical root split");
    }
    return kd_cost(tree, s);
}

std::int64_t cost_perp(const KdTree& tree, double s)
{
    if (tree.rootAxis() != Axis::Horizontal) {
        throw AxisMismatchError("cost_perp needs a horizontal root split");
    }
    return kd_cost(tree, s);
}

StepProfile kd_profile(const KdTree& tree)
{
    std::vector<std::pair<double, double>> intervals;
    intervals.reserve(tree.size());
    for (const auto& n : tree.nodes()) intervals.emplace_back(n.cell.x0, n.cell.x1);
    return StepProfile::from_intervals(intervals, tree.box().x0, tree.box().x1);
}

namespace {

std::int64_t rebuilt_child_cost(const KdTree& tree, std::int32_t child, double s)
{
    if (child == KdTree::kNone) return 0;
    const auto& c = tree.node(static_cast<std::size_t>(child));
    const auto sub = KdTree::build(tree.subtree_points(static_cast<std::size_t>(child)), c.axis, c.cell);
    return c.axis == Axis::Vertical ? cost_parallel(sub, s) : cost_perp(sub, s);
}

}  // namespace

bool decomposition_check(const KdTree& tree, double s)
{
    if (tree.empty()) {
        throw EmptyTreeError("decomposition_check: empty tree");
    }
    const auto& root = tree.node(0);
    const auto total = cost_perp(tree, s);
    return total == 1 + rebuilt_child_cost(tree, root.child[0], s) + rebuilt_child_cost(tree, root.child[1], s);
}

bool decomposition_check_parallel(const KdTree& tree, double s)
{
    if (tree.empty()) {
        throw EmptyTreeError("decomposition_check_parallel: empty tree");
    }
    const auto& root = tree.node(0);
    const auto total = cost_parallel(tree, s);
    const auto hit = root.child[s >= root.point.x ? 1 : 0];
    return total == 1 + rebuilt_child_cost(tree, hit, s);
}

}  // namespace pmq
