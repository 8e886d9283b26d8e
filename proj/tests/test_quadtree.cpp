#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "pmq/errors.hpp"
#include "pmq/quadtree.hpp"
#include "pmq/specfun.hpp"

using namespace pmq;

namespace {

const auto kTwo = make_points({{0.5, 0.5}, {0.25, 0.75}});

std::vector<Point2> random_points(std::size_t n, std::uint64_t seed, std::uint64_t stream)
{
    RngStream rng(seed, stream);
    return sample_uniform_points(n, rng);
}

Cell quadrant_cell(const QuadTree::Node& p, int q)
{
    Cell c = p.cell;
    if (q >= 2) c.x0 = p.point.x; else c.x1 = p.point.x;
    if (q % 2 == 1) c.y0 = p.point.y; else c.y1 = p.point.y;
    return c;
}

bool same_cell(const Cell& a, const Cell& b) { return a.x0 == b.x0 && a.x1 == b.x1 && a.y0 == b.y0 && a.y1 == b.y1; }

}  // namespace

TEST_CASE("step profile basics")
{
    StepProfile p({0.0, 0.2, 0.5, 0.7}, {3, 3, 1, 2});
    CHECK(p.segments() == 3);
    CHECK(p.breakpoints() == std::vector<double>{0.0, 0.5, 0.7});
    CHECK(p.eval(0.0) == 3);
    CHECK(p.eval(0.49) == 3);
    CHECK(p.eval(0.5) == 1);
    CHECK(p.eval(1.0) == 2);
    CHECK_THROWS_AS(p.eval(1.1), DomainError);
    CHECK_THROWS_AS(p.eval(-0.1), DomainError);
    const auto m = p.maximum();
    CHECK(m.value == 3);
    CHECK(m.from == 0.0);
    CHECK(m.to == 0.5);
    CHECK_THROWS_AS(StepProfile({0.0, 0.0}, {1, 2}), DomainError);
    CHECK_THROWS_AS(StepProfile({0.0}, {1, 2}), DomainError);
}

TEST_CASE("step profile from intervals")
{
    const auto p = StepProfile::from_intervals({{0.0, 1.0}, {0.0, 0.5}, {0.25, 0.5}, {0.5, 1.0}}, 0.0, 1.0);
    CHECK(p.eval(0.1) == 2);
    CHECK(p.eval(0.25) == 3);
    CHECK(p.eval(0.5) == 2);
    CHECK(p.eval(1.0) == 2);
    CHECK(p.breakpoints() == std::vector<double>{0.0, 0.25, 0.5});
}

TEST_CASE("general position")
{
    CHECK_THROWS_AS(QuadTree::build(make_points({{0.5, 0.5}, {0.5, 0.7}})), GeneralPositionError);
    CHECK_THROWS_AS(QuadTree::build(make_points({{0.5, 0.5}, {0.2, 0.5}})), GeneralPositionError);
    CHECK_THROWS_AS(QuadTree::build(make_points({{1.5, 0.5}})), DomainError);
    const auto pts = make_points({{0.1, 0.2}, {0.3, 0.4}});
    CHECK(pts[1].index == 1);
}

TEST_CASE("build: small trees")
{
    const auto empty = QuadTree::build({});
    CHECK(empty.size() == 0);
    CHECK(empty.empty());

    const auto one = QuadTree::build(make_points({{0.5, 0.5}}));
    REQUIRE(one.size() == 1);
    const auto& root = one.node(0);
    CHECK(same_cell(root.cell, kUnitSquare));
    const Cell expect[4] = {{0, 0.5, 0, 0.5}, {0, 0.5, 0.5, 1}, {0.5, 1, 0, 0.5}, {0.5, 1, 0.5, 1}};
    double area = 0.0;
    for (int q = 0; q < 4; ++q) {
        CHECK(same_cell(quadrant_cell(root, q), expect[q]));
        area += quadrant_cell(root, q).area();
    }
    CHECK(area == doctest::Approx(1.0).epsilon(1e-15));

    const auto two = QuadTree::build(kTwo);
    CHECK(two.node(0).child[1] == 1);
    CHECK(same_cell(two.node(1).cell, Cell{0.0, 0.5, 0.5, 1.0}));
    CHECK(two.node(1).depth == 1);
}

TEST_CASE("build: quadrant numbering")
{
    const auto t = QuadTree::build(make_points({{0.5, 0.5}, {0.25, 0.25}, {0.3, 0.75}, {0.75, 0.3}, {0.8, 0.8}}));
    CHECK(t.node(0).child == std::array<std::int32_t, 4>{1, 2, 3, 4});
}

TEST_CASE("sampling")
{
    RngStream a(9, 0), b(9, 0);
    CHECK(sample_uniform_points(0, a).empty());
    const auto p = sample_uniform_points(100, a), q = sample_uniform_points(100, b);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(p[i].x == q[i].x);
        CHECK(p[i].y == q[i].y);
        CHECK(p[i].index == i);
    }
    const auto many = random_points(100000, 3, 0);
    double sx = 0.0;
    for (const auto& pt : many) sx += pt.x;
    CHECK(std::abs(sx / 1e5 - 0.5) < 3.0 / std::sqrt(12.0) / std::sqrt(1e5));
}

TEST_CASE("cost: worked examples")
{
    CHECK(cost(QuadTree::build({}), 0.3) == 0);
    const auto one = QuadTree::build(make_points({{0.5, 0.5}}));
    for (double s : {0.0, 0.2, 0.5, 1.0}) CHECK(cost(one, s) == 1);
    const auto two = QuadTree::build(kTwo);
    CHECK(cost(two, 0.3) == 2);
    CHECK(cost(two, 0.6) == 1);
    CHECK(cost(two, 0.5) == 1);
    CHECK(horizontal_crossings(two, 0.3) == 2);
    CHECK(horizontal_crossings(one, 0.7) == 1);
    CHECK_THROWS_AS(cost(two, 1.5), DomainError);
    CHECK_THROWS_AS(horizontal_crossings(two, -0.5), DomainError);
}

TEST_CASE("cost equals horizontal crossings")
{
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::uint64_t r = 0; r < 1000; ++r) {
        const auto tree = QuadTree::build(random_points(1 + r % 50, 1, r));
        for (int k = 0; k < 20; ++k) {
            const double s = k == 0 ? 1.0 : k == 1 ? 0.0 : u(gen);
            REQUIRE(cost(tree, s) == horizontal_crossings(tree, s));
        }
    }
}

TEST_CASE("profile")
{
    const auto one = profile(QuadTree::build(make_points({{0.5, 0.5}})));
    CHECK(one.segments() == 1);
    CHECK(one.eval(0.0) == 1);
    CHECK(one.eval(1.0) == 1);

    const auto two = profile(QuadTree::build(kTwo));
    CHECK(two.breakpoints() == std::vector<double>{0.0, 0.5});
    CHECK(two.values() == std::vector<std::int64_t>{2, 1});

    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::uint64_t r = 0; r < 20; ++r) {
        const auto tree = QuadTree::build(random_points(30, 2, r));
        const auto p = profile(tree);
        for (double b : p.breakpoints()) {
            bool stored = b == 0.0;
            for (const auto& n : tree.nodes()) stored = stored || n.point.x == b;
            CHECK(stored);
        }
        for (int k = 0; k < 200; ++k) {
            const double s = u(gen);
            REQUIRE(p.eval(s) == cost(tree, s));
        }
        for (const auto& n : tree.nodes()) CHECK(p.eval(n.point.x) == cost(tree, n.point.x));
        CHECK(p.eval(1.0) == cost(tree, 1.0));
    }
}

TEST_CASE("supremum")
{
    const auto one = supremum(QuadTree::build(make_points({{0.5, 0.5}})));
    CHECK(one.maxCost == 1);
    CHECK(one.from == 0.0);
    CHECK(one.to == 1.0);
    const auto two = supremum(QuadTree::build(kTwo));
    CHECK(two.maxCost == 2);
    CHECK(two.from == 0.0);
    CHECK(two.to == 0.5);

    for (std::uint64_t r = 0; r < 100; ++r) {
        const auto tree = QuadTree::build(random_points(1 + r, 4, r));
        std::int64_t best = 0;
        for (int k = 0; k <= 10000; ++k) best = std::max(best, cost(tree, k / 10000.0));
        for (const auto& n : tree.nodes()) best = std::max(best, cost(tree, n.point.x));
        const auto sup = supremum(tree);
        REQUIRE(sup.maxCost == best);
        CHECK(cost(tree, sup.from) == best);
    }
}

TEST_CASE("subtree sizes")
{
    CHECK_THROWS_AS(subtree_sizes(QuadTree::build({})), EmptyTreeError);
    CHECK(subtree_sizes(QuadTree::build(make_points({{0.5, 0.5}}))) == std::array<std::size_t, 4>{0, 0, 0, 0});
    CHECK(subtree_sizes(QuadTree::build(kTwo)) == std::array<std::size_t, 4>{0, 1, 0, 0});

    const int reps = 100000;
    double sum = 0.0, sq = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto sz = subtree_sizes(QuadTree::build(random_points(10, 6, static_cast<std::uint64_t>(r))));
        REQUIRE(sz[0] + sz[1] + sz[2] + sz[3] == 9);
        sum += static_cast<double>(sz[0]);
        sq += static_cast<double>(sz[0] * sz[0]);
    }
    const double mean = sum / reps;
    const double se = std::sqrt((sq / reps - mean * mean) / reps);
    CHECK(std::abs(mean - 9.0 / 4.0) < 3.0 * se);
}

TEST_CASE("structure: cells nest and tile")
{
    for (std::uint64_t r = 0; r < 50; ++r) {
        const auto tree = QuadTree::build(random_points(200, 8, r));
        for (std::size_t k = 0; k < tree.size(); ++k) {
            const auto& n = tree.node(k);
            CHECK(n.cell.contains(n.point));
            double area = 0.0;
            for (int q = 0; q < 4; ++q) area += quadrant_cell(n, q).area();
            CHECK(std::abs(area - n.cell.area()) <= 1e-15);
            if (n.parent != QuadTree::kNone) {
                const auto& p = tree.node(static_cast<std::size_t>(n.parent));
                const int q = QuadTree::quadrant(p, n.point.x, n.point.y);
                CHECK(p.child[q] == static_cast<std::int32_t>(k));
                CHECK(same_cell(n.cell, quadrant_cell(p, q)));
            }
        }
    }
}

TEST_CASE("monotone under insertion and right-continuous")
{
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::uint64_t r = 0; r < 30; ++r) {
        const auto pts = random_points(100, 10, r);
        const auto tree = QuadTree::build(pts);
        std::vector<std::size_t> sizes(101);
        for (std::size_t i = 0; i <= 100; ++i) sizes[i] = i;
        for (int k = 0; k < 20; ++k) {
            const double s = u(gen);
            const auto c = prefix_costs(tree, s, sizes);
            for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] >= c[i - 1]);
            const std::vector<Point2> first(pts.begin(), pts.begin() + 37);
            CHECK(c[37] == cost(QuadTree::build(first), s));
            CHECK(cost(tree, std::nextafter(s, 0.0)) == cost(tree, s));
        }
    }
}

TEST_CASE("poisson trees")
{
    RngStream rng(1, 0);
    CHECK(sample_poisson_tree(0.0, rng).empty());
    CHECK_THROWS_AS(sample_poisson(-1.0, rng), DomainError);
    double sum = 0.0;
    for (std::uint64_t r = 0; r < 100000; ++r) {
        RngStream s(2, r);
        sum += static_cast<double>(sample_poisson(20.0, s));
    }
    CHECK(std::abs(sum / 1e5 - 20.0) < 3.0 * std::sqrt(20.0 / 1e5));

    const double t = 2000.0;
    const int reps = 2000;
    double total = 0.0;
    for (int r = 0; r < reps; ++r) {
        RngStream s(3, static_cast<std::uint64_t>(r));
        const auto tree = sample_poisson_tree(t, s);
        total += static_cast<double>(cost(tree, s.uniform()));
    }
    const double predicted = constants().kappa * std::pow(t, constants().beta) - 1.0;
    CHECK(std::abs(total / reps - predicted) < 0.05 * predicted);
}

TEST_CASE("coupled extension")
{
    for (std::uint64_t r = 0; r < 50; ++r) {
        RngStream rng(4, r);
        const auto pts = sample_extended_poisson_points(50.0, 0.0, rng);
        const auto c = coupled_extension_cost(pts, 0.0, 0.3);
        CHECK(c.baseCost == c.extendedCost);
    }
    int violations = 0;
    double ext = 0.0, ext2 = 0.0, alt = 0.0, alt2 = 0.0;
    const int reps = 10000;
    const double t = 100.0, eps = 0.1, s = 0.3;
    for (int r = 0; r < reps; ++r) {
        RngStream rng(5, static_cast<std::uint64_t>(r));
        const auto pts = sample_extended_poisson_points(t, eps, rng);
        const auto c = coupled_extension_cost(pts, eps, s);
        violations += c.baseCost > c.extendedCost;
        ext += static_cast<double>(c.extendedCost);
        ext2 += static_cast<double>(c.extendedCost * c.extendedCost);
        RngStream other(6, static_cast<std::uint64_t>(r));
        const auto v = static_cast<double>(cost(sample_poisson_tree(t * (1 + eps), other), (s + eps) / (1 + eps)));
        alt += v;
        alt2 += v * v;
    }
    CHECK(violations == 0);
    const double m1 = ext / reps, m2 = alt / reps;
    const double se = std::sqrt((ext2 / reps - m1 * m1) / reps + (alt2 / reps - m2 * m2) / reps);
    CHECK(std::abs(m1 - m2) < 3.0 * se);
    CHECK_THROWS_AS(coupled_extension_cost({}, -0.1, 0.3), DomainError);
}
