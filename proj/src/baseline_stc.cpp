#include "ghacpp/baseline_stc.hpp"

#include <algorithm>
#include <cmath>

namespace ghacpp {

namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int floor_mod(int a, int b) {
    int m = a % b;
    if (m != 0 && ((a < 0) != (b < 0))) m += b;
    return m;
}

// Ring order over the four sub-cells, counter-clockwise: SW, SE, NE, NW.
int ring_index(int qx, int qy) { return qy == 0 ? qx : 3 - qx; }

void quad_xy(int ring, int& qx, int& qy) {
    switch (ring) {
        case 0: qx = 0; qy = 0; break;
        case 1: qx = 1; qy = 0; break;
        case 2: qx = 1; qy = 1; break;
        default: qx = 0; qy = 1; break;
    }
}

constexpr int kSideDI[4] = {0, 1, 0, -1}; // N, E, S, W
constexpr int kSideDJ[4] = {1, 0, -1, 0};

// Sub-cells lying on a given side of a cell, as ring indices.
void side_ports(int side, int& a, int& b) {
    switch (side) {
        case 0: a = 2; b = 3; break; // north: NE, NW
        case 1: a = 1; b = 2; break; // east: SE, NE
        case 2: a = 0; b = 1; break; // south: SW, SE
        default: a = 0; b = 3; break; // west: SW, NW
    }
}

int mirror_ring(int side, int ring) {
    int qx, qy;
    quad_xy(ring, qx, qy);
    switch (side) {
        case 0: qy = 0; break; // crossed north, land on the south row
        case 1: qx = 0; break;
        case 2: qy = 1; break;
        default: qx = 1; break;
    }
    return ring_index(qx, qy);
}

int ring_distance(int a, int b) {
    int d = floor_mod(b - a, 4);
    return std::min(d, 4 - d);
}

} // namespace

CoarseCell StcPlanner::coarse_of(const LatticePoint& p) const {
    return {floor_div(p.i - pi_, 2), floor_div(p.j - pj_, 2)};
}

int StcPlanner::quadrant_of(const LatticePoint& p) const {
    return ring_index(floor_mod(p.i - pi_, 2), floor_mod(p.j - pj_, 2));
}

LatticePoint StcPlanner::lattice_at(const CoarseCell& cell, int quadrant) const {
    int qx, qy;
    quad_xy(quadrant, qx, qy);
    return {pi_ + 2 * cell.I + qx, pj_ + 2 * cell.J + qy};
}

bool StcPlanner::coarse_free(const KnownMaps& maps, int pi, int pj, const CoarseCell& cell) {
    const LatticeFrame& lat = maps.lattice;
    const double sp = lat.spacing;
    const double res = maps.cspace.resolution();
    const double x_lo = lat.origin.x + sp * (pi + 2 * cell.I) - sp * 0.5;
    const double y_lo = lat.origin.y + sp * (pj + 2 * cell.J) - sp * 0.5;
    const double x_hi = x_lo + 2.0 * sp;
    const double y_hi = y_lo + 2.0 * sp;
    const int cx0 = static_cast<int>(std::floor(x_lo / res)) - 1;
    const int cx1 = static_cast<int>(std::floor(x_hi / res)) + 1;
    const int cy0 = static_cast<int>(std::floor(y_lo / res)) - 1;
    const int cy1 = static_cast<int>(std::floor(y_hi / res)) + 1;
    for (int cy = cy0; cy <= cy1; ++cy) {
        double yc = (cy + 0.5) * res;
        if (yc < y_lo - 1e-9 || yc > y_hi + 1e-9) continue;
        for (int cx = cx0; cx <= cx1; ++cx) {
            double xc = (cx + 0.5) * res;
            if (xc < x_lo - 1e-9 || xc > x_hi + 1e-9) continue;
            CellIndex c{cx, cy};
            if (!maps.cspace.in_bounds(c)) return false;
            if (maps.cspace.at(c) == CSpace::Blocked) return false;
        }
    }
    return true;
}

void StcPlanner::queue_within(const CoarseCell& cell, int from_quad, int to_quad) {
    int q = from_quad;
    while (q != to_quad) {
        int d = floor_mod(to_quad - q, 4);
        q = d == 3 ? floor_mod(q - 1, 4) : floor_mod(q + 1, 4);
        pending_.push_back(lattice_at(cell, q));
    }
}

void StcPlanner::queue_ring(const CoarseCell& cell, int entry_quad) {
    for (int k = 1; k <= 4; ++k) {
        pending_.push_back(lattice_at(cell, floor_mod(entry_quad + k, 4)));
    }
    for (int q = 0; q < 4; ++q) covered_.insert(lattice_at(cell, q));
}

int StcPlanner::queue_crossing(const CoarseCell& from, int from_quad, const CoarseCell& to) {
    int side = 0;
    for (int s = 0; s < 4; ++s) {
        if (from.I + kSideDI[s] == to.I && from.J + kSideDJ[s] == to.J) {
            side = s;
            break;
        }
    }
    int pa, pb;
    side_ports(side, pa, pb);
    int port = pa;
    int da = ring_distance(from_quad, pa);
    int db = ring_distance(from_quad, pb);
    if (db < da || (db == da && pb < pa)) port = pb;
    queue_within(from, from_quad, port);
    int landing = mirror_ring(side, port);
    pending_.push_back(lattice_at(to, landing));
    return landing;
}

StcPlanner::Step StcPlanner::step(const KnownMaps& maps, const LatticePoint& robot) {
    if (complete_) return {true, robot};
    if (!pending_.empty()) {
        LatticePoint p = pending_.front();
        pending_.pop_front();
        return {false, p};
    }

    if (!initialized_) {
        initialized_ = true;
        bool found = false;
        const int order[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
        for (const auto& pp : order) {
            pi_ = pp[0];
            pj_ = pp[1];
            if (coarse_free(maps, pi_, pj_, coarse_of(robot))) {
                found = true;
                break;
            }
        }
        if (!found) {
            complete_ = true;
            return {true, robot};
        }
        CoarseCell root = coarse_of(robot);
        tree_.insert(root);
        stack_.push_back(root);
        queue_ring(root, quadrant_of(robot));
        LatticePoint p = pending_.front();
        pending_.pop_front();
        return {false, p};
    }

    CoarseCell cur = stack_.back();
    int cq = quadrant_of(robot);

    for (int s = 0; s < 4; ++s) {
        CoarseCell next{cur.I + kSideDI[s], cur.J + kSideDJ[s]};
        if (tree_.count(next)) continue;
        if (!coarse_free(maps, pi_, pj_, next)) continue;
        parent_[next] = cur;
        tree_.insert(next);
        stack_.push_back(next);
        int entry = queue_crossing(cur, cq, next);
        queue_ring(next, entry);
        LatticePoint p = pending_.front();
        pending_.pop_front();
        return {false, p};
    }

    if (stack_.size() > 1) {
        CoarseCell par = stack_[stack_.size() - 2];
        queue_crossing(cur, cq, par);
        stack_.pop_back();
        LatticePoint p = pending_.front();
        pending_.pop_front();
        return {false, p};
    }

    // The walk is back at the root with nothing adjacent to grow. Cells that
    // became free after their neighbourhood was left behind are picked up by
    // rescanning the whole tree and retracing to the first match.
    CoarseCell target{};
    bool found = false;
    for (const CoarseCell& t : tree_) {
        for (int s = 0; s < 4 && !found; ++s) {
            CoarseCell next{t.I + kSideDI[s], t.J + kSideDJ[s]};
            if (!tree_.count(next) && coarse_free(maps, pi_, pj_, next)) {
                target = t;
                found = true;
            }
        }
        if (found) break;
    }
    if (!found) {
        complete_ = true;
        return {true, robot};
    }

    std::vector<CoarseCell> path{target};
    while (!(path.back() == cur)) path.push_back(parent_.at(path.back()));
    std::reverse(path.begin(), path.end());
    int q = cq;
    for (size_t k = 1; k < path.size(); ++k) {
        q = queue_crossing(path[k - 1], q, path[k]);
    }
    stack_ = path;
    LatticePoint p = pending_.front();
    pending_.pop_front();
    return {false, p};
}

} // namespace ghacpp
