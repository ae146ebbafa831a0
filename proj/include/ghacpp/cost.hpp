#pragma once

#include <vector>

#include "ghacpp/footprint.hpp"
#include "ghacpp/genetic.hpp"
#include "ghacpp/mapping.hpp"

namespace ghacpp {

/// Poses along the polyline of a mini-trajectory, spaced at most `step_m`
/// apart. Segment endpoints appear exactly once; every pose carries the
/// heading of the segment it lies on (a waypoint gets the heading of the
/// segment arriving at it). A single-point chromosome yields one pose with
/// heading 0.
std::vector<Pose> interpolate(const Chromosome& c, const LatticeFrame& lattice, double step_m);

double collision_penalty(const std::vector<Pose>& poses, const Grid<CSpace>& cspace);
double human_closeness_penalty(const Chromosome& c, const LatticeFrame& lattice,
                               const std::vector<SensedHuman>& humans);
double visited_penalty(const Chromosome& c, const std::set<LatticePoint>& visited);
double unvisited_neighbourhood_penalty(const Chromosome& c, const std::set<LatticePoint>& visited);
double turn_penalty(const Chromosome& c, bool monotone);
double repeat_disinfection_penalty(const std::vector<Pose>& poses, const KnownMaps& maps,
                                   const FootprintMasks& masks);

struct CostBreakdown {
    double collision = 0.0;
    double human = 0.0;
    double visited = 0.0;
    double neighbour = 0.0;
    double turn = 0.0;
    double repeat = 0.0;
    double total = 0.0;
};

/// Evaluates mini-trajectory cost against a frozen snapshot of the known
/// maps. Construct once per planning cycle; the evaluator keeps integral
/// images of the disinfected and known-free grids so footprint overlap
/// queries run on row spans instead of individual cells. Results match the
/// standalone penalty functions exactly.
class CostEvaluator {
  public:
    CostEvaluator(const KnownMaps& maps, const CostParams& params, const FootprintMasks& masks);

    CostBreakdown evaluate(const Chromosome& c) const;
    double total_cost(const Chromosome& c) const { return evaluate(c).total; }

    /// Number of disinfected cells under the footprint mask anchored at the
    /// given grid cell.
    int disinfected_under(const CellIndex& base, double heading) const;
    /// Number of known-free cells under the mask that are not yet
    /// disinfected. Used to find cells where switching the lamps on gains
    /// anything.
    int fresh_gain(const CellIndex& base, double heading) const;
    struct GainProbe {
        int cells = 0;
        double heading = 0.0;
    };
    /// Highest fresh_gain over the eight footprint headings at a lattice
    /// point, with the heading that attains it (first of the tied headings
    /// in counter-clockwise order from +x).
    GainProbe best_gain(const LatticePoint& p) const;
    /// True when any of the eight headings at this lattice point covers at
    /// least one known-free cell that is not yet disinfected.
    bool lattice_point_has_gain(const LatticePoint& p) const;
    /// Shorthand for best_gain(p).heading.
    double best_gain_heading(const LatticePoint& p) const;

    const KnownMaps& maps() const { return maps_; }
    const FootprintMasks& masks() const { return masks_; }
    const CostParams& params() const { return params_; }

  private:
    int span_count(const std::vector<long long>& ii, int x0, int x1, int y) const;
    int mask_overlap(const std::vector<long long>& ii, const HeadingMask& mask,
                     const CellIndex& base) const;

    const KnownMaps& maps_;
    CostParams params_;
    const FootprintMasks& masks_;
    int w_ = 0;
    int h_ = 0;
    std::vector<long long> ii_disinfected_;
    std::vector<long long> ii_free_;
    std::vector<long long> ii_free_disinfected_;
};

} // namespace ghacpp
