#include "ghacpp/cost.hpp"

#include <cmath>

namespace ghacpp {

std::vector<Pose> interpolate(const Chromosome& c, const LatticeFrame& lattice, double step_m) {
    std::vector<Pose> poses;
    if (c.empty()) return poses;
    Vec2 first = lattice.to_world(c.front());
    if (c.size() == 1) {
        poses.push_back({first.x, first.y, 0.0});
        return poses;
    }
    Vec2 second = lattice.to_world(c[1]);
    double first_heading = std::atan2(second.y - first.y, second.x - first.x);
    poses.push_back({first.x, first.y, quantize_heading(first_heading)});
    for (size_t k = 1; k < c.size(); ++k) {
        Vec2 a = lattice.to_world(c[k - 1]);
        Vec2 b = lattice.to_world(c[k]);
        Vec2 delta = b - a;
        double len = delta.norm();
        double heading = quantize_heading(std::atan2(delta.y, delta.x));
        int n = static_cast<int>(std::ceil(len / step_m - 1e-9));
        for (int i = 1; i <= n; ++i) {
            double f = static_cast<double>(i) / n;
            poses.push_back({a.x + delta.x * f, a.y + delta.y * f, heading});
        }
    }
    return poses;
}

double collision_penalty(const std::vector<Pose>& poses, const Grid<CSpace>& cspace) {
    for (const Pose& p : poses) {
        CellIndex c = cspace.cell_of(p.x, p.y);
        if (!cspace.in_bounds(c) || cspace.at(c) == CSpace::Blocked) return 1.0;
    }
    return 0.0;
}

double human_closeness_penalty(const Chromosome& c, const LatticeFrame& lattice,
                               const std::vector<SensedHuman>& humans) {
    double worst = 0.0;
    for (const LatticePoint& p : c) {
        Vec2 w = lattice.to_world(p);
        for (const SensedHuman& h : humans) {
            if (!h.seen) continue;
            for (const Vec2& s : h.points) {
                double dx = w.x - s.x;
                double dy = w.y - s.y;
                double v = std::exp(-(dx * dx + dy * dy) / (2.0 * h.sigma));
                if (v > worst) worst = v;
            }
        }
    }
    return worst;
}

double visited_penalty(const Chromosome& c, const std::set<LatticePoint>& visited) {
    if (c.size() <= 1) return 0.0;
    int n = 0;
    for (size_t k = 1; k < c.size(); ++k) {
        if (visited.count(c[k])) ++n;
    }
    return static_cast<double>(n) / static_cast<double>(c.size() - 1);
}

double unvisited_neighbourhood_penalty(const Chromosome& c,
                                       const std::set<LatticePoint>& visited) {
    if (visited.empty()) return 0.0;
    int n = 0;
    for (const LatticePoint& p : c) {
        bool any = false;
        for (int d = 0; d < 8; ++d) {
            if (visited.count({p.i + kDir8DX[d], p.j + kDir8DY[d]})) {
                any = true;
                break;
            }
        }
        if (!any) ++n;
    }
    return static_cast<double>(n) / static_cast<double>(c.size());
}

double turn_penalty(const Chromosome& c, bool monotone) {
    if (c.size() < 3) return 0.0;
    double sum = 0.0;
    for (size_t k = 1; k + 1 < c.size(); ++k) {
        int d1 = dir8_from_delta(c[k].i - c[k - 1].i, c[k].j - c[k - 1].j);
        int d2 = dir8_from_delta(c[k + 1].i - c[k].i, c[k + 1].j - c[k].j);
        int steps = (d2 - d1) % 8;
        if (steps < 0) steps += 8;
        if (steps > 4) steps = 8 - steps;
        double cost = 0.0;
        if (monotone) {
            if (steps == 1) cost = 0.5;
            else if (steps >= 2) cost = 1.0;
        } else {
            if (steps == 1) cost = 1.0;
            else if (steps == 2) cost = 0.5;
            else if (steps >= 3) cost = 1.0;
        }
        sum += cost;
    }
    return sum / static_cast<double>(c.size() - 2);
}

double repeat_disinfection_penalty(const std::vector<Pose>& poses, const KnownMaps& maps,
                                   const FootprintMasks& masks) {
    if (poses.empty()) return 0.0;
    double sum = 0.0;
    for (const Pose& p : poses) {
        const HeadingMask& mask = masks.mask_for(p.heading);
        CellIndex base = maps.disinfected.cell_of(p.x, p.y);
        int count = 0;
        for (const CellIndex& off : mask.offsets) {
            CellIndex q{base.cx + off.cx, base.cy + off.cy};
            if (maps.disinfected.in_bounds(q) && maps.disinfected.at(q) != 0) ++count;
        }
        sum += static_cast<double>(count) / static_cast<double>(mask.cell_count);
    }
    return sum / static_cast<double>(poses.size());
}

CostEvaluator::CostEvaluator(const KnownMaps& maps, const CostParams& params,
                             const FootprintMasks& masks)
    : maps_(maps), params_(params), masks_(masks) {
    w_ = maps.known.width();
    h_ = maps.known.height();
    const size_t stride = static_cast<size_t>(w_) + 1;
    ii_disinfected_.assign(stride * (static_cast<size_t>(h_) + 1), 0);
    ii_free_.assign(stride * (static_cast<size_t>(h_) + 1), 0);
    ii_free_disinfected_.assign(stride * (static_cast<size_t>(h_) + 1), 0);
    for (int y = 0; y < h_; ++y) {
        for (int x = 0; x < w_; ++x) {
            CellIndex c{x, y};
            long long dis = maps.disinfected.at(c) != 0 ? 1 : 0;
            long long fre = maps.known.at(c) == Known::Free ? 1 : 0;
            size_t idx = static_cast<size_t>(y + 1) * stride + static_cast<size_t>(x + 1);
            size_t up = idx - stride;
            ii_disinfected_[idx] = ii_disinfected_[idx - 1] + ii_disinfected_[up] -
                                   ii_disinfected_[up - 1] + dis;
            ii_free_[idx] = ii_free_[idx - 1] + ii_free_[up] - ii_free_[up - 1] + fre;
            ii_free_disinfected_[idx] = ii_free_disinfected_[idx - 1] + ii_free_disinfected_[up] -
                                        ii_free_disinfected_[up - 1] + (dis & fre);
        }
    }
}

int CostEvaluator::span_count(const std::vector<long long>& ii, int x0, int x1, int y) const {
    const size_t stride = static_cast<size_t>(w_) + 1;
    size_t row = static_cast<size_t>(y + 1) * stride;
    size_t above = static_cast<size_t>(y) * stride;
    return static_cast<int>(ii[row + static_cast<size_t>(x1) + 1] - ii[row + static_cast<size_t>(x0)] -
                            ii[above + static_cast<size_t>(x1) + 1] + ii[above + static_cast<size_t>(x0)]);
}

int CostEvaluator::mask_overlap(const std::vector<long long>& ii, const HeadingMask& mask,
                                const CellIndex& base) const {
    int count = 0;
    for (const MaskSpan& s : mask.spans) {
        int y = base.cy + s.dy;
        if (y < 0 || y >= h_) continue;
        int x0 = base.cx + s.dx_min;
        int x1 = base.cx + s.dx_max;
        if (x0 < 0) x0 = 0;
        if (x1 >= w_) x1 = w_ - 1;
        if (x0 > x1) continue;
        count += span_count(ii, x0, x1, y);
    }
    return count;
}

int CostEvaluator::disinfected_under(const CellIndex& base, double heading) const {
    return mask_overlap(ii_disinfected_, masks_.mask_for(heading), base);
}

int CostEvaluator::fresh_gain(const CellIndex& base, double heading) const {
    const HeadingMask& mask = masks_.mask_for(heading);
    return mask_overlap(ii_free_, mask, base) - mask_overlap(ii_free_disinfected_, mask, base);
}

CostEvaluator::GainProbe CostEvaluator::best_gain(const LatticePoint& p) const {
    GainProbe probe;
    Vec2 w = maps_.lattice.to_world(p);
    CellIndex base = maps_.known.cell_of(w.x, w.y);
    if (!maps_.known.in_bounds(base)) return probe;
    for (int d = 0; d < 8; ++d) {
        int cells = fresh_gain(base, dir8_heading(d));
        if (cells > probe.cells) {
            probe.cells = cells;
            probe.heading = dir8_heading(d);
        }
    }
    return probe;
}

bool CostEvaluator::lattice_point_has_gain(const LatticePoint& p) const {
    return best_gain(p).cells > 0;
}

double CostEvaluator::best_gain_heading(const LatticePoint& p) const {
    return best_gain(p).heading;
}

CostBreakdown CostEvaluator::evaluate(const Chromosome& c) const {
    CostBreakdown out;
    std::vector<Pose> poses = interpolate(c, maps_.lattice, params_.step_m);

    out.collision = collision_penalty(poses, maps_.cspace);
    out.human = human_closeness_penalty(c, maps_.lattice, maps_.humans);
    out.visited = visited_penalty(c, maps_.visited);
    out.neighbour = unvisited_neighbourhood_penalty(c, maps_.visited);
    out.turn = turn_penalty(c, params_.turn_penalty_monotone);

    double sum = 0.0;
    for (const Pose& p : poses) {
        const HeadingMask& mask = masks_.mask_for(p.heading);
        CellIndex base = maps_.disinfected.cell_of(p.x, p.y);
        int count = mask_overlap(ii_disinfected_, mask, base);
        sum += static_cast<double>(count) / static_cast<double>(mask.cell_count);
    }
    out.repeat = poses.empty() ? 0.0 : sum / static_cast<double>(poses.size());

    const CostWeights& w = params_.weights;
    out.total = w.w_collision * out.collision + w.w_human * out.human +
                w.w_visited * out.visited + w.w_neighbour * out.neighbour +
                w.w_turn * out.turn + w.w_repeat * out.repeat;
    return out;
}

} // namespace ghacpp
