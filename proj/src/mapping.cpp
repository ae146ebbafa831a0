#include "ghacpp/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ghacpp {

namespace {

constexpr double kEdtInf = 1e20;

/// One pass of the exact squared Euclidean distance transform
/// (lower envelope of parabolas).
void dt1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
          std::vector<double>& z, int n) {
    int k = 0;
    v[0] = 0;
    z[0] = -kEdtInf;
    z[1] = kEdtInf;
    for (int q = 1; q < n; ++q) {
        double s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
                   (2.0 * q - 2.0 * v[k]);
        while (s <= z[k]) {
            --k;
            s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
                (2.0 * q - 2.0 * v[k]);
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kEdtInf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        d[q] = (double(q) - v[k]) * (double(q) - v[k]) + f[v[k]];
    }
}

} // namespace

Grid<CSpace> inflate(const Grid<Known>& known, double radius_m) {
    int w = known.width(), h = known.height();
    double r_cells = radius_m / known.resolution();
    double r2 = r_cells * r_cells;

    std::vector<double> dist(static_cast<size_t>(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            dist[static_cast<size_t>(y) * w + x] =
                known.at(x, y) == Known::Free ? kEdtInf : 0.0;

    int n_max = std::max(w, h);
    std::vector<double> f(n_max), d(n_max), z(n_max + 1);
    std::vector<int> v(n_max);

    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) f[y] = dist[static_cast<size_t>(y) * w + x];
        dt1d(f, d, v, z, h);
        for (int y = 0; y < h; ++y) dist[static_cast<size_t>(y) * w + x] = d[y];
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) f[x] = dist[static_cast<size_t>(y) * w + x];
        dt1d(f, d, v, z, w);
        for (int x = 0; x < w; ++x) dist[static_cast<size_t>(y) * w + x] = d[x];
    }

    Grid<CSpace> out(w, h, known.resolution(), CSpace::Traversable);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (dist[static_cast<size_t>(y) * w + x] <= r2 + 1e-9)
                out.at(x, y) = CSpace::Blocked;
    return out;
}

KnownMaps make_known_maps(const WorldModel& world, double inflation_radius_m,
                          double waypoint_resolution_m, size_t human_count) {
    KnownMaps maps;
    int w = world.occupancy.width(), h = world.occupancy.height();
    double res = world.occupancy.resolution();
    maps.known = Grid<Known>(w, h, res, Known::Unknown);
    maps.disinfected = Grid<uint8_t>(w, h, res, 0);
    maps.inflation_radius = inflation_radius_m;
    maps.lattice.origin = {world.start.x, world.start.y};
    maps.lattice.spacing = waypoint_resolution_m;
    maps.humans.resize(human_count);
    maps.cspace = inflate(maps.known, inflation_radius_m);
    return maps;
}

namespace {

void mark_free(Grid<Known>& known, const CellIndex& c) {
    if (known.in_bounds(c) && known.at(c) == Known::Unknown) known.at(c) = Known::Free;
}

/// Walks one ray, marking traversed cells Free and the terminating cell
/// Occupied. Terminates at the first ground-truth Occupied cell, the nearest
/// human body disc, or max_range, whichever comes first.
void sweep_ray(KnownMaps& maps, const WorldModel& world, Vec2 from, double bearing,
               double max_range) {
    Vec2 dir{std::cos(bearing), std::sin(bearing)};

    double t_human = std::numeric_limits<double>::infinity();
    for (const Human& hu : world.humans) {
        Vec2 oc = from - hu.center;
        double b = oc.dot(dir);
        double c = oc.dot(oc) - hu.body_radius * hu.body_radius;
        if (c <= 0.0) {
            t_human = 0.0;
            break;
        }
        double disc = b * b - c;
        if (disc < 0.0) continue;
        double t = -b - std::sqrt(disc);
        if (t >= 0.0 && t < t_human) t_human = t;
    }

    const Grid<Cell>& truth = world.occupancy;
    double res = truth.resolution();
    CellIndex c = truth.cell_of(from);
    if (!truth.in_bounds(c)) return;

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

    if (truth.at(c) == Cell::Occupied) {
        maps.known.at(c) = Known::Occupied;
        return;
    }
    if (t_human == 0.0) return;
    mark_free(maps.known, c);

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
        if (t_enter >= t_human) {
            // The ray reached a human first; its surface reads as an obstacle.
            if (t_human <= max_range) {
                CellIndex hc = truth.cell_of(from + dir * t_human);
                if (maps.known.in_bounds(hc)) maps.known.at(hc) = Known::Occupied;
            }
            return;
        }
        if (t_enter > max_range || !truth.in_bounds(c)) return;
        if (truth.at(c) == Cell::Occupied) {
            maps.known.at(c) = Known::Occupied;
            return;
        }
        mark_free(maps.known, c);
    }
}

} // namespace

long long sense_and_update(KnownMaps& maps, const WorldModel& world, const Pose& pose,
                           const SensorParams& sensor) {
    long long unknown_before = 0;
    for (const Known& k : maps.known.raw()) {
        if (k == Known::Unknown) ++unknown_before;
    }

    Vec2 from{pose.x, pose.y};
    int n_rays = static_cast<int>(std::lround(360.0 / sensor.angular_step_deg));
    for (int k = 0; k < n_rays; ++k) {
        double bearing = (2.0 * kPi * k) / n_rays;
        sweep_ray(maps, world, from, bearing, sensor.max_range_m);
    }

    for (size_t h = 0; h < world.humans.size(); ++h) {
        const Human& hu = world.humans[h];
        double dist = (hu.center - from).norm();
        if (dist > sensor.human_detection_range_m) continue;
        double bearing = std::atan2(hu.center.y - from.y, hu.center.x - from.x);
        RaycastResult rc = raycast_static(world, from, bearing, dist);
        bool visible = !rc.hit || rc.distance >= dist - hu.body_radius - 1e-9;
        if (!visible) continue;
        SensedHuman& sh = maps.humans[h];
        sh.seen = true;
        sh.sigma = hu.sigma;
        sh.points = hu.sample_points;
    }

    maps.cspace = inflate(maps.known, maps.inflation_radius);

    long long unknown_after = 0;
    for (const Known& k : maps.known.raw()) {
        if (k == Known::Unknown) ++unknown_after;
    }
    return unknown_before - unknown_after;
}

void mark_visited(KnownMaps& maps, const std::vector<LatticePoint>& points) {
    for (const LatticePoint& p : points) maps.visited.insert(p);
}

long long stamp_disinfection(KnownMaps& maps, const Pose& pose, const FootprintMasks& masks,
                             bool lamps_on) {
    if (!lamps_on) return 0;
    const HeadingMask& m = masks.mask_for(pose.heading);
    CellIndex base = maps.known.cell_of(pose.x, pose.y);
    long long newly = 0;
    for (const CellIndex& off : m.offsets) {
        CellIndex c{base.cx + off.cx, base.cy + off.cy};
        if (!maps.known.in_bounds(c)) continue;
        if (maps.known.at(c) != Known::Free) continue;
        if (!maps.disinfected.at(c)) {
            maps.disinfected.at(c) = 1;
            ++newly;
        }
    }
    maps.disinfected_count += newly;
    return newly;
}

std::string dump_known_map(const KnownMaps& maps) {
    std::string out;
    int w = maps.known.width(), h = maps.known.height();
    out.reserve(static_cast<size_t>(w + 1) * h);
    for (int y = h - 1; y >= 0; --y) {
        for (int x = 0; x < w; ++x) {
            char ch = '?';
            switch (maps.known.at(x, y)) {
                case Known::Unknown: ch = '?'; break;
                case Known::Free: ch = maps.disinfected.at(x, y) ? 'D' : '.'; break;
                case Known::Occupied: ch = '#'; break;
            }
            out.push_back(ch);
        }
        out.push_back('\n');
    }
    return out;
}

std::vector<CellIndex> frontier_cells(const KnownMaps& maps) {
    std::vector<CellIndex> out;
    int w = maps.known.width(), h = maps.known.height();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (maps.known.at(x, y) != Known::Free) continue;
            // Orthogonal adjacency only: a diagonal touch through a staircase
            // corner of an obstacle boundary cannot be observed any closer, so
            // it does not count as explorable.
            static constexpr int kOrthX[4] = {1, -1, 0, 0};
            static constexpr int kOrthY[4] = {0, 0, 1, -1};
            bool frontier = false;
            for (int d = 0; d < 4 && !frontier; ++d) {
                int nx = x + kOrthX[d], ny = y + kOrthY[d];
                if (maps.known.in_bounds(nx, ny) && maps.known.at(nx, ny) == Known::Unknown)
                    frontier = true;
            }
            if (frontier) out.push_back({x, y});
        }
    }
    return out;
}

} // namespace ghacpp
