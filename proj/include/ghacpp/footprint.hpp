#pragma once

#include <array>
#include <vector>

#include "ghacpp/grid.hpp"
#include "ghacpp/scenario.hpp"

namespace ghacpp {

/// True when the world point lies inside the lateral disinfection zone of a
/// robot at the given pose. The zone is a pair of closed half-ellipse lobes,
/// one per side of the body axis; the robot's own center point is excluded,
/// and there is no coverage fore or aft beyond the lobe half-length.
bool footprint_covers(const FootprintParams& fp, const Pose& pose, Vec2 point);

/// Contiguous run of mask cells on one row, used for fast overlap counting.
struct MaskSpan {
    int dy = 0;
    int dx_min = 0;
    int dx_max = 0; // inclusive
};

struct HeadingMask {
    std::vector<CellIndex> offsets; // cell offsets relative to the robot cell
    std::vector<MaskSpan> spans;
    int cell_count = 0;
};

/// Precomputed rasterized masks for the 8 quantized headings at a fixed grid
/// resolution. Offsets are relative to the cell containing the pose; the lobe
/// shape is evaluated from that cell's center, so masks are translation
/// invariant by construction.
class FootprintMasks {
  public:
    FootprintMasks() = default;
    FootprintMasks(const FootprintParams& fp, double resolution);

    const HeadingMask& mask_for(double heading) const;
    const HeadingMask& mask(int dir) const { return masks_[dir]; }
    double resolution() const { return resolution_; }
    const FootprintParams& params() const { return params_; }

    /// Analytic area of both lobes, in square meters.
    double analytic_area() const;

  private:
    FootprintParams params_;
    double resolution_ = 0.05;
    std::array<HeadingMask, 8> masks_;
};

/// Grid cells whose centers fall inside the footprint at the pose. The pose is
/// snapped to its containing cell's center so results match the cached masks.
std::vector<CellIndex> rasterize_footprint(const FootprintParams& fp, const Pose& pose,
                                           double resolution);

} // namespace ghacpp
