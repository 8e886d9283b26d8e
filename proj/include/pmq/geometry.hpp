#pragma once

#include <cstddef>
#include <vector>

namespace pmq {

/// A data point; `index` is its insertion order (0-based).
struct Point2 {
    double x = 0.0;
    double y = 0.0;
    std::size_t index = 0;
};

/// Axis-aligned rectangle [x0, x1) x [y0, y1). The right edge of a cell
/// that touches the right edge of the root box belongs to the cell.
struct Cell {
    double x0 = 0.0;
    double x1 = 1.0;
    double y0 = 0.0;
    double y1 = 1.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }

    /// True if the vertical line x = s meets the cell; rootX1 is the right
    /// edge of the enclosing root box.
    bool meets_vertical(double s, double rootX1) const
    {
        return (x0 <= s && s < x1) || (s == x1 && x1 == rootX1);
    }

    bool contains(const Point2& p) const { return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1; }
};

inline constexpr Cell kUnitSquare{0.0, 1.0, 0.0, 1.0};

/// Assigns index = position to each point.
std::vector<Point2> make_points(const std::vector<std::pair<double, double>>& xy);

/// Throws GeneralPositionError on a repeated x or y coordinate and
/// DomainError if a point lies outside `box`.
void check_general_position(const std::vector<Point2>& points, const Cell& box);

}  // namespace pmq
