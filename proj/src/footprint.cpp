#include "ghacpp/footprint.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ghacpp {

namespace {

/// cos/sin of a heading, with exact axis values for the eight lattice
/// directions. std::sin(kPi) and friends are off by an ulp or two, which is
/// enough to flip cells lying exactly on the lobe boundary and break the
/// rotation and mirror symmetries between the per-heading masks.
void heading_trig(double heading, double& c, double& s) {
    static const double r = std::sqrt(0.5);
    static const double ct[8] = {1.0, r, 0.0, -r, -1.0, -r, 0.0, r};
    static const double st[8] = {0.0, r, 1.0, r, 0.0, -r, -1.0, -r};
    double w = wrap_angle(heading);
    for (int dir = 0; dir < 8; ++dir) {
        if (w == dir8_heading(dir)) {
            c = ct[dir];
            s = st[dir];
            return;
        }
    }
    c = std::cos(heading);
    s = std::sin(heading);
}

} // namespace

bool footprint_covers(const FootprintParams& fp, const Pose& pose, Vec2 point) {
    double dx = point.x - pose.x;
    double dy = point.y - pose.y;
    double c, s;
    heading_trig(pose.heading, c, s);
    double u = c * dx + s * dy;   // along the body axis
    double v = -s * dx + c * dy;  // lateral, positive to the robot's left

    if (v > 0.0 && fp.sides == FootprintSides::RightOnly) return false;
    if (v < 0.0 && fp.sides == FootprintSides::LeftOnly) return false;
    if (u == 0.0 && v == 0.0) return false; // the robot center itself

    double a = fp.lobe_half_length_m;
    double b = fp.lobe_reach_m;
    double e = (u / a) * (u / a) + (v / b) * (v / b);
    return e <= 1.0;
}

FootprintMasks::FootprintMasks(const FootprintParams& fp, double resolution)
    : params_(fp), resolution_(resolution) {
    double reach = std::max(fp.lobe_reach_m, fp.lobe_half_length_m);
    int extent = static_cast<int>(std::ceil(reach / resolution)) + 1;

    for (int dir = 0; dir < 8; ++dir) {
        Pose pose{0.0, 0.0, dir8_heading(dir)};
        HeadingMask& m = masks_[dir];
        std::map<int, std::vector<int>> rows;
        for (int dy = -extent; dy <= extent; ++dy) {
            for (int dx = -extent; dx <= extent; ++dx) {
                Vec2 center{dx * resolution, dy * resolution};
                if (footprint_covers(fp, pose, center)) {
                    m.offsets.push_back({dx, dy});
                    rows[dy].push_back(dx);
                }
            }
        }
        m.cell_count = static_cast<int>(m.offsets.size());
        for (auto& [dy, xs] : rows) {
            std::sort(xs.begin(), xs.end());
            int run_start = xs.front();
            int prev = xs.front();
            for (size_t k = 1; k <= xs.size(); ++k) {
                if (k < xs.size() && xs[k] == prev + 1) {
                    prev = xs[k];
                    continue;
                }
                m.spans.push_back({dy, run_start, prev});
                if (k < xs.size()) {
                    run_start = xs[k];
                    prev = xs[k];
                }
            }
        }
    }
}

const HeadingMask& FootprintMasks::mask_for(double heading) const {
    int dir = static_cast<int>(std::llround(wrap_angle(heading) / (kPi / 4.0))) % 8;
    return masks_[dir];
}

double FootprintMasks::analytic_area() const {
    double one_lobe = kPi * params_.lobe_reach_m * params_.lobe_half_length_m / 2.0;
    return params_.sides == FootprintSides::Both ? 2.0 * one_lobe : one_lobe;
}

std::vector<CellIndex> rasterize_footprint(const FootprintParams& fp, const Pose& pose,
                                           double resolution) {
    FootprintMasks masks(fp, resolution);
    const HeadingMask& m = masks.mask_for(pose.heading);
    Grid<uint8_t> ref(1, 1, resolution);
    CellIndex base = ref.cell_of(pose.x, pose.y);
    std::vector<CellIndex> out;
    out.reserve(m.offsets.size());
    for (const CellIndex& off : m.offsets)
        out.push_back({base.cx + off.cx, base.cy + off.cy});
    return out;
}

} // namespace ghacpp
