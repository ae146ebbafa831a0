#pragma once

#include <deque>
#include <map>
#include <set>
#include <vector>

#include "ghacpp/mapping.hpp"

namespace ghacpp {

/// A coarse planning cell covering a 2x2 block of waypoint lattice cells.
struct CoarseCell {
    int I = 0;
    int J = 0;
    auto operator<=>(const CoarseCell&) const = default;
};

/// Online spanning-tree coverage over a coarse grid derived from the waypoint
/// lattice. The walk is incremental: the tree grows depth-first into coarse
/// cells currently classified free, each newly entered cell is swept with a
/// closed ring over its four sub-cells, and the robot physically retraces
/// tree edges when a branch is exhausted. One call to step() yields one
/// waypoint. The planner is deterministic and uses no randomness.
class StcPlanner {
  public:
    struct Step {
        bool complete = false;
        LatticePoint next{};
    };

    /// Plans the next waypoint given the current maps and the robot's lattice
    /// position (which must equal the previously returned waypoint).
    Step step(const KnownMaps& maps, const LatticePoint& robot);

    /// Sub-cells swept so far (each belongs to exactly one ring pass).
    const std::set<LatticePoint>& covered() const { return covered_; }
    size_t tree_size() const { return tree_.size(); }
    bool initialized() const { return initialized_; }
    std::pair<int, int> parity() const { return {pi_, pj_}; }

    /// True when every fine cell whose center lies in the coarse cell's box
    /// is in bounds and traversable in the current configuration space.
    static bool coarse_free(const KnownMaps& maps, int pi, int pj, const CoarseCell& cell);

  private:
    CoarseCell coarse_of(const LatticePoint& p) const;
    int quadrant_of(const LatticePoint& p) const;
    LatticePoint lattice_at(const CoarseCell& cell, int quadrant) const;
    void queue_within(const CoarseCell& cell, int from_quad, int to_quad);
    void queue_ring(const CoarseCell& cell, int entry_quad);
    /// Moves from `from` (robot at from_quad) into adjacent cell `to`;
    /// returns the quadrant the robot lands in.
    int queue_crossing(const CoarseCell& from, int from_quad, const CoarseCell& to);

    bool initialized_ = false;
    bool complete_ = false;
    int pi_ = 0;
    int pj_ = 0;
    std::set<CoarseCell> tree_;
    std::map<CoarseCell, CoarseCell> parent_;
    std::vector<CoarseCell> stack_;
    std::deque<LatticePoint> pending_;
    std::set<LatticePoint> covered_;
};

} // namespace ghacpp
