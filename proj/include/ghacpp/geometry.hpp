#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <vector>

namespace ghacpp {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::sqrt(x * x + y * y); }
};

/// Robot pose in world coordinates. Heading is radians in [0, 2*pi),
/// quantized to multiples of pi/4 everywhere the planner is involved.
struct Pose {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;

    Vec2 position() const { return {x, y}; }
};

/// Integer waypoint on the planning lattice, anchored at the mission start.
struct LatticePoint {
    int i = 0;
    int j = 0;

    auto operator<=>(const LatticePoint&) const = default;
};

/// Chebyshev distance, i.e. 8-connected adjacency when the result is 1.
inline int chebyshev(const LatticePoint& a, const LatticePoint& b) {
    int di = std::abs(a.i - b.i);
    int dj = std::abs(a.j - b.j);
    return di > dj ? di : dj;
}

inline bool adjacent8(const LatticePoint& a, const LatticePoint& b) {
    return chebyshev(a, b) == 1;
}

// ── 8-direction heading helpers ──────────────────────────────────────────

/// Direction index 0..7, counter-clockwise from +x in steps of 45 degrees.
inline constexpr int kDir8DX[8] = {1, 1, 0, -1, -1, -1, 0, 1};
inline constexpr int kDir8DY[8] = {0, 1, 1, 1, 0, -1, -1, -1};

inline double dir8_heading(int dir) { return (kPi / 4.0) * dir; }

/// Direction index for a unit lattice step; both components must be in {-1,0,1}
/// and not both zero.
int dir8_from_delta(int dx, int dy);

/// Snap an arbitrary angle to the nearest multiple of pi/4, result in [0, 2*pi).
double quantize_heading(double heading);

/// Smallest absolute angular difference between two headings, in [0, pi].
double heading_diff(double a, double b);

/// Wrap to [0, 2*pi).
double wrap_angle(double a);

/// Maps a mission-start anchor to the integer waypoint lattice.
struct LatticeFrame {
    Vec2 origin;          // world position of lattice point (0,0)
    double spacing = 0.5; // meters between adjacent lattice points

    Vec2 to_world(const LatticePoint& p) const {
        return {origin.x + spacing * p.i, origin.y + spacing * p.j};
    }
};

} // namespace ghacpp
