#include "pmq/geometry.hpp"

#include <algorithm>
#include <utility>

#include "pmq/errors.hpp"

namespace pmq {

std::vector<Point2> make_points(const std::vector<std::pair<double, double>>& xy)
{
    std::vector<Point2> out;
    out.reserve(xy.size());
    for (std::size_t i = 0; i < xy.size(); ++i) {
        out.push_back({xy[i].first, xy[i].second, i});
    }
    return out;
}

void check_general_position(const std::vector<Point2>& points, const Cell& box)
{
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(points.size());
    ys.reserve(points.size());
    for (const auto& p : points) {
        if (!box.contains(p)) {
            throw DomainError("point outside the root box");
        }
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) {
        throw GeneralPositionError("two points share an x-coordinate");
    }
    if (std::adjacent_find(ys.begin(), ys.end()) != ys.end()) {
        throw GeneralPositionError("two points share a y-coordinate");
    }
}

}  // namespace pmq
