#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ghacpp/grid.hpp"

namespace ghacpp {

enum class Cell : uint8_t { Free = 0, Occupied = 1 };

/// Static person standing in the arena. Sample points are boundary samples of
/// the body disc and stand in for the sensed point cloud.
struct Human {
    Vec2 center;
    double body_radius = 0.3;
    double sigma = 1.0; // personal-space spread, m^2
    std::vector<Vec2> sample_points;
};

/// Ground-truth arena: occupancy grid with a closed boundary wall ring,
/// axis-aligned rectangular obstacles, and static humans.
struct WorldModel {
    Grid<Cell> occupancy;
    std::vector<Human> humans;
    Pose start;
    double width_m = 0.0;
    double height_m = 0.0;
};

struct RaycastResult {
    bool hit = false;
    double distance = 0.0;   // meters from origin to the entry of the hit
    bool hit_human = false;
    int human_id = -1;
};

/// Casts a ray against the occupancy grid and all human body discs.
/// Returns the distance at which the ray first enters an Occupied cell or a
/// human disc, whichever is closer, or no hit within max_range.
RaycastResult raycast(const WorldModel& world, Vec2 from, double bearing, double max_range);

/// Same traversal, ignoring humans. Used for line-of-sight tests.
RaycastResult raycast_static(const WorldModel& world, Vec2 from, double bearing, double max_range);

/// Generates evenly spaced boundary samples for a human body disc.
std::vector<Vec2> human_boundary_samples(Vec2 center, double radius, int count);

} // namespace ghacpp
