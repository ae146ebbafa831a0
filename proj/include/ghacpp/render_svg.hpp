#pragma once

#include <string>

#include "ghacpp/executor.hpp"

namespace ghacpp {

/// Renders the mission outcome as a standalone SVG document: ground-truth
/// obstacles, the disinfected area, the driven trajectory, and the humans
/// (red when an irradiation event hit them, green otherwise). Output bytes
/// are deterministic for identical inputs.
std::string render_svg(const WorldModel& world, const KnownMaps& maps, const MissionLog& log);

} // namespace ghacpp
