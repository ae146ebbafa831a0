#pragma once

#include <functional>
#include <vector>

#include "ghacpp/rng.hpp"
#include "ghacpp/scenario.hpp"

namespace ghacpp {

/// A mini-trajectory: an ordered list of waypoint lattice points. The first
/// point is the robot's current lattice cell; consecutive points are
/// 8-adjacent and no point repeats.
using Chromosome = std::vector<LatticePoint>;

bool chromosome_valid(const Chromosome& c, int max_points);

/// Keeps the first point and regrows the tail: up to sample_len new points,
/// each drawn uniformly from the 8-neighbours of the previous point that are
/// not already part of the chromosome. Stops early when no candidate remains.
Chromosome random_sample_mutation(const Chromosome& c, int sample_len, Rng& rng);

/// Inserts one point at a uniform position in 1..=len. At the end the point is
/// an unused 8-neighbour of the last point; in the middle it must be adjacent
/// to both surrounding points. Returns the input unchanged when the chromosome
/// is already at max_points or no candidate cell exists.
Chromosome add_point_mutation(const Chromosome& c, int max_points, Rng& rng);

/// Removes the point at a uniform position in 1..len-1 (the first point is
/// never removed). The last point is always removable; an interior point only
/// when its neighbours are mutually 8-adjacent. Identity when not removable.
Chromosome remove_point_mutation(const Chromosome& c, Rng& rng);

/// Candidate cells for an insertion between c[index-1] and c[index], or after
/// the last point when index == len. Exposed for exhaustive geometry tests.
std::vector<LatticePoint> add_point_candidates(const Chromosome& c, size_t index);

using CostFn = std::function<double(const Chromosome&)>;

struct EvolveResult {
    Chromosome best;
    double best_cost = 0.0;
    int generations = 0;
    std::vector<double> best_cost_history; // best total after each generation
};

/// One planning cycle of the genetic search. The population starts from
/// sample mutations of the single-point chromosome at `start`; each
/// generation every individual passes through the three mutations with their
/// configured probabilities, parents and offspring are merged, sorted by
/// cost (ties: shorter first, then insertion order) and truncated. Stops when
/// the best point sequence is unchanged for `t` consecutive generations or
/// after `m` generations.
EvolveResult evolve_mini_trajectory(const LatticePoint& start, const GaParams& params, Rng& rng,
                                    const CostFn& cost_fn);

} // namespace ghacpp
