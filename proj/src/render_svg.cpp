#include "ghacpp/render_svg.hpp"

#include <cstdio>
#include <set>

namespace ghacpp {

namespace {

constexpr double kScale = 120.0; // px per meter

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

void rect(std::string& out, double x, double y, double w, double h, const char* fill,
          const char* extra = "") {
    out += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
           num(h) + "\" fill=\"" + fill + "\"" + extra + "/>\n";
}

} // namespace

std::string render_svg(const WorldModel& world, const KnownMaps& maps, const MissionLog& log) {
    const double wm = world.width_m;
    const double hm = world.height_m;
    const double W = wm * kScale;
    const double H = hm * kScale;
    auto px = [&](double x) { return x * kScale; };
    auto py = [&](double y) { return (hm - y) * kScale; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) + "\" height=\"" +
           num(H) + "\" viewBox=\"0 0 " + num(W) + " " + num(H) + "\">\n";
    rect(out, 0, 0, W, H, "#f8f8f4");

    // Disinfected cells, compressed into horizontal runs.
    const double res = maps.disinfected.resolution();
    for (int cy = 0; cy < maps.disinfected.height(); ++cy) {
        int run_start = -1;
        for (int cx = 0; cx <= maps.disinfected.width(); ++cx) {
            bool on = cx < maps.disinfected.width() && maps.disinfected.at(cx, cy) != 0;
            if (on && run_start < 0) run_start = cx;
            if (!on && run_start >= 0) {
                double x0 = run_start * res;
                double y1 = (cy + 1) * res;
                rect(out, px(x0), py(y1), (cx - run_start) * res * kScale, res * kScale,
                     "#7ec8a9");
                run_start = -1;
            }
        }
    }

    // Ground-truth occupied cells.
    for (int cy = 0; cy < world.occupancy.height(); ++cy) {
        int run_start = -1;
        for (int cx = 0; cx <= world.occupancy.width(); ++cx) {
            bool on = cx < world.occupancy.width() && world.occupancy.at(cx, cy) == Cell::Occupied;
            if (on && run_start < 0) run_start = cx;
            if (!on && run_start >= 0) {
                double x0 = run_start * world.occupancy.resolution();
                double y1 = (cy + 1) * world.occupancy.resolution();
                rect(out, px(x0), py(y1), (cx - run_start) * world.occupancy.resolution() * kScale,
                     world.occupancy.resolution() * kScale, "#3a3a3a");
                run_start = -1;
            }
        }
    }

    // Trajectory.
    std::vector<Pose> wps;
    std::set<int> irradiated;
    for (const Event& e : log.events) {
        if (const auto* w = std::get_if<WaypointReachedEvent>(&e.payload)) {
            wps.push_back(w->pose);
        } else if (const auto* ir = std::get_if<IrradiationRecord>(&e.payload)) {
            irradiated.insert(ir->human_id);
        }
    }
    if (!wps.empty()) {
        out += "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"2\" points=\"";
        for (size_t k = 0; k < wps.size(); ++k) {
            if (k) out += ' ';
            out += num(px(wps[k].x)) + "," + num(py(wps[k].y));
        }
        out += "\"/>\n";
        out += "<circle cx=\"" + num(px(wps.front().x)) + "\" cy=\"" + num(py(wps.front().y)) +
               "\" r=\"5\" fill=\"#1f5fbf\"/>\n";
    }

    // Humans with their sampled boundary points.
    for (size_t h = 0; h < world.humans.size(); ++h) {
        const Human& hu = world.humans[h];
        const char* color = irradiated.count(static_cast<int>(h)) ? "#d03030" : "#2f9e44";
        out += "<circle cx=\"" + num(px(hu.center.x)) + "\" cy=\"" + num(py(hu.center.y)) +
               "\" r=\"" + num(hu.body_radius * kScale) + "\" fill=\"" + color +
               "\" fill-opacity=\"0.6\" stroke=\"" + color + "\"/>\n";
        for (const Vec2& p : hu.sample_points) {
            out += "<circle cx=\"" + num(px(p.x)) + "\" cy=\"" + num(py(p.y)) +
                   "\" r=\"2\" fill=\"" + color + "\"/>\n";
        }
    }

    out += "</svg>\n";
    return out;
}

} // namespace ghacpp
