#include "ghacpp/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ghacpp {

std::vector<Vec2> human_boundary_samples(Vec2 center, double radius, int count) {
    std::vector<Vec2> pts;
    pts.reserve(count);
    for (int k = 0; k < count; ++k) {
        double a = 2.0 * kPi * k / count;
        pts.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
    }
    return pts;
}

namespace {

/// Distance along the ray at which it first enters the disc, if any.
std::optional<double> ray_circle_entry(Vec2 from, Vec2 dir, Vec2 center, double radius) {
    Vec2 oc = from - center;
    double b = oc.dot(dir);
    double c = oc.dot(oc) - radius * radius;
    if (c <= 0.0) return 0.0; // origin already inside
    double disc = b * b - c;
    if (disc < 0.0) return std::nullopt;
    double t = -b - std::sqrt(disc);
    if (t < 0.0) return std::nullopt;
    return t;
}

/// Amanatides-Woo traversal over the occupancy grid. Returns the distance at
/// which the ray enters the first Occupied cell, if one is hit within range.
std::optional<double> traverse_to_occupied(const Grid<Cell>& grid, Vec2 from, Vec2 dir,
                                           double max_range) {
    CellIndex c = grid.cell_of(from);
    if (!grid.in_bounds(c)) return std::nullopt;
    if (grid.at(c) == Cell::Occupied) return 0.0;

    double res = grid.resolution();
    int step_x = dir.x > 0 ? 1 : (dir.x < 0 ? -1 : 0);
    int step_y = dir.y > 0 ? 1 : (dir.y < 0 ? -1 : 0);

    double inf = std::numeric_limits<double>::infinity();
    double t_max_x = inf, t_max_y = inf, t_delta_x = inf, t_delta_y = inf;
    if (step_x != 0) {
        double edge = (step_x > 0 ? (c.cx + 1) * res : c.cx * res);
        t_max_x = (edge - from.x) / dir.x;
        t_delta_x = res / std::fabs(dir.x);
    }
    if (step_y != 0) {
        double edge = (step_y > 0 ? (c.cy + 1) * res : c.cy * res);
        t_max_y = (edge - from.y) / dir.y;
        t_delta_y = res / std::fabs(dir.y);
    }

    while (true) {
        double t_enter;
        if (t_max_x < t_max_y) {
            t_enter = t_max_x;
            c.cx += step_x;
            t_max_x += t_delta_x;
        } else {
            t_enter = t_max_y;
            c.cy += step_y;
            t_max_y += t_delta_y;
        }
        if (t_enter > max_range) return std::nullopt;
        if (!grid.in_bounds(c)) return std::nullopt;
        if (grid.at(c) == Cell::Occupied) return t_enter;
    }
}

} // namespace

RaycastResult raycast_static(const WorldModel& world, Vec2 from, double bearing,
                             double max_range) {
    Vec2 dir{std::cos(bearing), std::sin(bearing)};
    RaycastResult r;
    auto t = traverse_to_occupied(world.occupancy, from, dir, max_range);
    if (t) {
        r.hit = true;
        r.distance = *t;
    }
    return r;
}

RaycastResult raycast(const WorldModel& world, Vec2 from, double bearing, double max_range) {
    Vec2 dir{std::cos(bearing), std::sin(bearing)};
    RaycastResult r = raycast_static(world, from, bearing, max_range);

    for (size_t h = 0; h < world.humans.size(); ++h) {
        const Human& hu = world.humans[h];
        auto t = ray_circle_entry(from, dir, hu.center, hu.body_radius);
        if (!t || *t > max_range) continue;
        if (!r.hit || *t < r.distance) {
            r.hit = true;
            r.distance = *t;
            r.hit_human = true;
            r.human_id = static_cast<int>(h);
        }
    }
    return r;
}

} // namespace ghacpp
