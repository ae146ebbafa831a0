#pragma once

#include <set>
#include <string>
#include <vector>

#include "ghacpp/footprint.hpp"
#include "ghacpp/world.hpp"

namespace ghacpp {

enum class Known : uint8_t { Unknown = 0, Free = 1, Occupied = 2 };
enum class CSpace : uint8_t { Traversable = 0, Blocked = 1 };

struct SensedHuman {
    bool seen = false;
    double sigma = 1.0;
    std::vector<Vec2> points;
};

/// Everything the robot knows: discovered occupancy, configuration space,
/// visited planning waypoints, the monotone disinfection map, and sensed
/// human sample points.
struct KnownMaps {
    Grid<Known> known;
    Grid<CSpace> cspace;
    Grid<uint8_t> disinfected;
    long long disinfected_count = 0;
    std::set<LatticePoint> visited;
    std::vector<SensedHuman> humans;
    LatticeFrame lattice;
    double inflation_radius = 0.30;

    CellIndex lattice_cell(const LatticePoint& p) const {
        return known.cell_of(lattice.to_world(p));
    }
    bool lattice_traversable(const LatticePoint& p) const {
        CellIndex c = lattice_cell(p);
        return cspace.in_bounds(c) && cspace.at(c) == CSpace::Traversable;
    }
};

/// Fresh map state for a mission: everything Unknown, C-space fully Blocked,
/// the waypoint lattice anchored at the start pose.
KnownMaps make_known_maps(const WorldModel& world, double inflation_radius_m,
                          double waypoint_resolution_m, size_t human_count);

/// Inflates Occupied-or-Unknown cells by an exact Euclidean disc: a cell is
/// Blocked when any source cell center lies within the radius of its center.
Grid<CSpace> inflate(const Grid<Known>& known, double radius_m);

/// One idealized 360-degree sweep. Cells traversed by a ray become Free, the
/// hit cell becomes Occupied; discovered cells are never reverted to Unknown.
/// Humans block rays and enter the map as Occupied boundary cells; sample
/// points of humans within detection range and line of sight are recorded.
/// Recomputes the C-space afterwards. Returns the number of cells whose
/// state left Unknown during this sweep.
long long sense_and_update(KnownMaps& maps, const WorldModel& world, const Pose& pose,
                           const SensorParams& sensor);

void mark_visited(KnownMaps& maps, const std::vector<LatticePoint>& points);

/// Flags Free cells under the footprint mask at the pose. No-op when lamps are
/// off. Returns the number of newly flagged cells.
long long stamp_disinfection(KnownMaps& maps, const Pose& pose, const FootprintMasks& masks,
                             bool lamps_on);

/// Text rendering: '?' Unknown, '.' Free, '#' Occupied, 'D' disinfected Free.
/// Rows are emitted top-down so the dump reads like a map.
std::string dump_known_map(const KnownMaps& maps);

/// Known-Free cells with at least one Unknown orthogonal neighbour.
std::vector<CellIndex> frontier_cells(const KnownMaps& maps);

} // namespace ghacpp
