#include "pmq/quadtree.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "pmq/errors.hpp"

namespace pmq {

namespace {

void check_query(const Cell& box, double s)
{
    if (!(s >= box.x0 && s <= box.x1)) {
        throw DomainError("query line outside the root box");
    }
}

}  // namespace

int QuadTree::quadrant(const Node& n, double x, double y)
{
    const int right = x >= n.point.x ? 2 : 0;
    const int up = y >= n.point.y ? 1 : 0;
    return right + up;
}

QuadTree QuadTree::build(const std::vector<Point2>& points, const Cell& box)
{
    check_general_position(points, box);
    QuadTree t;
    t.box_ = box;
    t.nodes_.reserve(points.size());
    for (const auto& p : points) {
        if (t.nodes_.empty()) {
            t.nodes_.push_back({p, box});
            continue;
        }
        std::int32_t at = 0;
        for (;;) {
            const int q = quadrant(t.nodes_[at], p.x, p.y);
            const std::int32_t next = t.nodes_[at].child[q];
            if (next == kNone) {
                const Node& parent = t.nodes_[at];
                Cell c = parent.cell;
                if (q >= 2) c.x0 = parent.point.x; else c.x1 = parent.point.x;
                if (q % 2 == 1) c.y0 = parent.point.y; else c.y1 = parent.point.y;
                const auto id = static_cast<std::int32_t>(t.nodes_.size());
                t.nodes_.push_back({p, c, {kNone, kNone, kNone, kNone}, at, parent.depth + 1});
                t.nodes_[at].child[q] = id;
                break;
            }
            at = next;
        }
    }
    return t;
}

std::vector<Point2> sample_uniform_points(std::size_t n, RngStream& rng, const Cell& box)
{
    std::vector<Point2> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = box.x0 + box.width() * rng.uniform();
        const double y = box.y0 + box.height() * rng.uniform();
        pts.push_back({x, y, i});
    }
    return pts;
}

std::vector<std::int64_t> prefix_costs(const QuadTree& tree, double s, const std::vector<std::size_t>& sizes)
{
    check_query(tree.box(), s);
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
        const int side = s >= n.point.x ? 2 : 0;
        for (int q : {side, side + 1}) {
            if (n.child[q] != QuadTree::kNone) stack.push_back(n.child[q]);
        }
    }
    return out;
}

std::int64_t cost(const QuadTree& tree, double s)
{
    return prefix_costs(tree, s, {tree.size()}).front();
}

std::int64_t horizontal_crossings(const QuadTree& tree, double s)
{
    check_query(tree.box(), s);
    const auto& box = tree.box();
    std::int64_t count = 0;
    for (const auto& n : tree.nodes()) {
        double left = box.x0;
        double right = box.x1;
        for (auto a = n.parent; a != QuadTree::kNone; a = tree.node(a).parent) {
            const double ax = tree.node(a).point.x;
            if (ax <= n.point.x) left = std::max(left, ax); else right = std::min(right, ax);
        }
        if ((left <= s && s < right) || (s == right && right == box.x1)) ++count;
    }
    return count;
}

StepProfile prefix_profile(const QuadTree& tree, std::size_t prefix)
{
    prefix = std::min(prefix, tree.size());
    std::vector<std::pair<double, double>> intervals;
    intervals.reserve(prefix);
    for (std::size_t k = 0; k < prefix; ++k) {
        const auto& c = tree.node(k).cell;
        intervals.emplace_back(c.x0, c.x1);
    }
    return StepProfile::from_intervals(intervals, tree.box().x0, tree.box().x1);
}

StepProfile profile(const QuadTree& tree)
{
    return prefix_profile(tree, tree.size());
}

Supremum supremum(const QuadTree& tree)
{
    const auto m = profile(tree).maximum();
    return {m.value, m.from, m.to};
}

std::array<std::size_t, 4> subtree_sizes(const QuadTree& tree)
{
    if (tree.empty()) {
        throw EmptyTreeError("subtree_sizes: empty tree");
    }
    std::vector<std::size_t> size(tree.size(), 1);
    for (std::size_t k = tree.size(); k-- > 1;) {
        size[static_cast<std::size_t>(tree.node(k).parent)] += size[k];
    }
    std::array<std::size_t, 4> out{};
    const auto& root = tree.node(0);
    for (int q = 0; q < 4; ++q) {
        if (root.child[q] != QuadTree::kNone) out[q] = size[static_cast<std::size_t>(root.child[q])];
    }
    return out;
}

std::uint64_t sample_poisson(double mean, RngStream& rng)
{
    if (!(mean >= 0.0)) {
        throw DomainError("Poisson mean must be nonnegative");
    }
    if (mean == 0.0) return 0;
    std::poisson_distribution<std::int64_t> dist(mean);
    return static_cast<std::uint64_t>(dist(rng));
}

QuadTree sample_poisson_tree(double t, RngStream& rng)
{
    const auto n = sample_poisson(t, rng);
    return QuadTree::build(sample_uniform_points(n, rng));
}

std::vector<Point2> sample_extended_poisson_points(double t, double eps, RngStream& rng)
{
    if (!(eps >= 0.0)) {
        throw DomainError("extension width must be nonnegative");
    }
    const auto n = sample_poisson(t * (1.0 + eps), rng);
    return sample_uniform_points(n, rng, Cell{-eps, 1.0, 0.0, 1.0});
}

CoupledCosts coupled_extension_cost(const std::vector<Point2>& points, double eps, double s)
{
    if (!(eps >= 0.0)) {
        throw DomainError("extension width must be nonnegative");
    }
    if (!(s >= 0.0 && s <= 1.0)) {
        throw DomainError("query line outside [0, 1]");
    }
    std::vector<Point2> inside;
    inside.reserve(points.size());
    for (const auto& p : points) {
        if (p.x >= 0.0) inside.push_back(p);
    }
    const auto base = QuadTree::build(inside);
    const auto extended = QuadTree::build(points, Cell{-eps, 1.0, 0.0, 1.0});
    return {horizontal_crossings(base, s), horizontal_crossings(extended, s)};
}

}  // namespace pmq
