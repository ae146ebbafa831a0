#include "ghacpp/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ghacpp {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ScenarioError("scenario: " + msg); }

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key)) fail("missing required field '" + key + "'");
    if (!j.at(key).is_number()) fail("field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

double optional_number(const json& j, const std::string& key, double def) {
    if (!j.contains(key)) return def;
    if (!j.at(key).is_number()) fail("field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

bool optional_bool(const json& j, const std::string& key, bool def) {
    if (!j.contains(key)) return def;
    if (!j.at(key).is_boolean()) fail("field '" + key + "' must be a boolean");
    return j.at(key).get<bool>();
}

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) fail("unknown field '" + it.key() + "' in " + where);
    }
}

} // namespace

Scenario parse_scenario(const std::string& json_text, const std::string& name_hint) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("top level must be an object");

    check_keys(j, "scenario",
               {"name", "notes", "width_m", "height_m", "resolution_m", "start", "obstacles",
                "humans", "sensor", "robot", "footprint", "ga", "cost", "mission"});

    Scenario sc;
    sc.name = j.value("name", name_hint);
    sc.width_m = require_number(j, "width_m");
    sc.height_m = require_number(j, "height_m");
    sc.resolution_m = optional_number(j, "resolution_m", 0.05);
    if (sc.width_m <= 0 || sc.height_m <= 0) fail("arena dimensions must be positive");
    if (sc.resolution_m <= 0) fail("resolution_m must be positive");

    if (!j.contains("start") || !j.at("start").is_object()) fail("missing 'start' object");
    const json& js = j.at("start");
    check_keys(js, "start", {"x", "y", "heading_deg"});
    sc.start.x = require_number(js, "x");
    sc.start.y = require_number(js, "y");
    sc.start.heading = quantize_heading(optional_number(js, "heading_deg", 0.0) * kPi / 180.0);

    if (j.contains("obstacles")) {
        if (!j.at("obstacles").is_array()) fail("'obstacles' must be an array");
        for (const json& jo : j.at("obstacles")) {
            if (!jo.is_object()) fail("each obstacle must be an object");
            check_keys(jo, "obstacle", {"x", "y", "w", "h"});
            ObstacleRect r;
            r.x = require_number(jo, "x");
            r.y = require_number(jo, "y");
            r.w = require_number(jo, "w");
            r.h = require_number(jo, "h");
            if (r.w <= 0 || r.h <= 0) fail("obstacle dimensions must be positive");
            sc.obstacles.push_back(r);
        }
    }

    if (j.contains("humans")) {
        if (!j.at("humans").is_array()) fail("'humans' must be an array");
        for (const json& jh : j.at("humans")) {
            if (!jh.is_object()) fail("each human must be an object");
            check_keys(jh, "human", {"x", "y", "body_radius_m", "sigma"});
            HumanSpec h;
            h.x = require_number(jh, "x");
            h.y = require_number(jh, "y");
            h.body_radius_m = optional_number(jh, "body_radius_m", 0.3);
            h.sigma = optional_number(jh, "sigma", 1.0);
            if (h.body_radius_m <= 0) fail("human body_radius_m must be positive");
            if (h.sigma <= 0) fail("human sigma must be positive");
            sc.humans.push_back(h);
        }
    }

    if (j.contains("sensor")) {
        const json& s = j.at("sensor");
        check_keys(s, "sensor", {"max_range_m", "angular_step_deg", "human_detection_range_m"});
        sc.sensor.max_range_m = optional_number(s, "max_range_m", sc.sensor.max_range_m);
        sc.sensor.angular_step_deg =
            optional_number(s, "angular_step_deg", sc.sensor.angular_step_deg);
        sc.sensor.human_detection_range_m =
            optional_number(s, "human_detection_range_m", sc.sensor.human_detection_range_m);
        if (sc.sensor.max_range_m <= 0 || sc.sensor.angular_step_deg <= 0)
            fail("sensor ranges and angular step must be positive");
    }

    if (j.contains("robot")) {
        const json& r = j.at("robot");
        check_keys(r, "robot",
                   {"inflation_radius_m", "speed_mps", "turn_rate_radps", "lamp_safety_radius_m"});
        sc.robot.inflation_radius_m =
            optional_number(r, "inflation_radius_m", sc.robot.inflation_radius_m);
        sc.robot.speed_mps = optional_number(r, "speed_mps", sc.robot.speed_mps);
        sc.robot.turn_rate_radps = optional_number(r, "turn_rate_radps", sc.robot.turn_rate_radps);
        sc.robot.lamp_safety_radius_m =
            optional_number(r, "lamp_safety_radius_m", sc.robot.lamp_safety_radius_m);
        if (sc.robot.speed_mps <= 0 || sc.robot.turn_rate_radps <= 0)
            fail("robot speed and turn rate must be positive");
        if (sc.robot.inflation_radius_m < 0) fail("inflation_radius_m must be non-negative");
    }

    if (j.contains("footprint")) {
        const json& f = j.at("footprint");
        check_keys(f, "footprint", {"lobe_reach_m", "lobe_half_length_m", "sides"});
        sc.footprint.lobe_reach_m = optional_number(f, "lobe_reach_m", sc.footprint.lobe_reach_m);
        sc.footprint.lobe_half_length_m =
            optional_number(f, "lobe_half_length_m", sc.footprint.lobe_half_length_m);
        if (f.contains("sides")) {
            if (!f.at("sides").is_string()) fail("footprint 'sides' must be a string");
            std::string s = f.at("sides").get<std::string>();
            if (s == "both") sc.footprint.sides = FootprintSides::Both;
            else if (s == "left") sc.footprint.sides = FootprintSides::LeftOnly;
            else if (s == "right") sc.footprint.sides = FootprintSides::RightOnly;
            else fail("footprint 'sides' must be one of both/left/right");
        }
        if (sc.footprint.lobe_reach_m <= 0 || sc.footprint.lobe_half_length_m <= 0)
            fail("footprint lobe dimensions must be positive");
    }

    if (j.contains("ga")) {
        const json& g = j.at("ga");
        check_keys(g, "ga",
                   {"n", "m", "t", "l", "p_random_sample", "p_add", "p_remove", "seed",
                    "waypoint_resolution_m", "max_points"});
        sc.ga.n = static_cast<int>(optional_number(g, "n", sc.ga.n));
        sc.ga.m = static_cast<int>(optional_number(g, "m", sc.ga.m));
        sc.ga.t = static_cast<int>(optional_number(g, "t", sc.ga.t));
        sc.ga.l = static_cast<int>(optional_number(g, "l", sc.ga.l));
        sc.ga.p_random_sample = optional_number(g, "p_random_sample", sc.ga.p_random_sample);
        sc.ga.p_add = optional_number(g, "p_add", sc.ga.p_add);
        sc.ga.p_remove = optional_number(g, "p_remove", sc.ga.p_remove);
        sc.ga.seed = static_cast<uint64_t>(optional_number(g, "seed", 1));
        sc.ga.waypoint_resolution_m =
            optional_number(g, "waypoint_resolution_m", sc.ga.waypoint_resolution_m);
        sc.ga.max_points = static_cast<int>(optional_number(g, "max_points", sc.ga.max_points));
        if (sc.ga.n <= 0 || sc.ga.m <= 0 || sc.ga.t <= 0 || sc.ga.l <= 0)
            fail("ga n, m, t, l must be positive");
        if (sc.ga.max_points < 1) fail("ga max_points must be at least 1");
        if (sc.ga.waypoint_resolution_m <= 0) fail("ga waypoint_resolution_m must be positive");
        for (double p : {sc.ga.p_random_sample, sc.ga.p_add, sc.ga.p_remove})
            if (p < 0 || p > 1) fail("ga mutation probabilities must be in [0,1]");
    }

    if (j.contains("cost")) {
        const json& c = j.at("cost");
        check_keys(c, "cost",
                   {"w_collision", "w_human", "w_visited", "w_neighbour", "w_turn", "w_repeat",
                    "sigma_default", "step_m", "turn_penalty_monotone"});
        CostWeights& w = sc.cost.weights;
        w.w_collision = optional_number(c, "w_collision", w.w_collision);
        w.w_human = optional_number(c, "w_human", w.w_human);
        w.w_visited = optional_number(c, "w_visited", w.w_visited);
        w.w_neighbour = optional_number(c, "w_neighbour", w.w_neighbour);
        w.w_turn = optional_number(c, "w_turn", w.w_turn);
        w.w_repeat = optional_number(c, "w_repeat", w.w_repeat);
        sc.cost.sigma_default = optional_number(c, "sigma_default", sc.cost.sigma_default);
        sc.cost.step_m = optional_number(c, "step_m", sc.cost.step_m);
        sc.cost.turn_penalty_monotone =
            optional_bool(c, "turn_penalty_monotone", sc.cost.turn_penalty_monotone);
        if (!(w.w_collision >= w.w_human && w.w_human >= w.w_visited &&
              w.w_visited >= w.w_neighbour && w.w_neighbour >= w.w_turn &&
              w.w_turn >= w.w_repeat && w.w_repeat >= 0.0))
            fail("cost weights must be non-negative and non-increasing");
        if (w.w_collision <= 0.0) fail("w_collision must be positive");
        if (sc.cost.sigma_default <= 0) fail("cost sigma_default must be positive");
        if (sc.cost.step_m <= 0) fail("cost step_m must be positive");
    }

    if (j.contains("mission")) {
        const json& m = j.at("mission");
        check_keys(m, "mission", {"max_cycles", "coverage_target_pct"});
        sc.mission.max_cycles = static_cast<int>(optional_number(m, "max_cycles", 3000));
        if (sc.mission.max_cycles <= 0) fail("mission max_cycles must be positive");
        sc.mission.coverage_target_pct =
            optional_number(m, "coverage_target_pct", sc.mission.coverage_target_pct);
        if (sc.mission.coverage_target_pct <= 0.0 || sc.mission.coverage_target_pct > 100.0) {
            fail("mission coverage_target_pct must be in (0, 100]");
        }
    }

    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioIoError("cannot read scenario file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), std::filesystem::path(path).stem().string());
}

WorldModel build_world(const Scenario& sc) {
    double res = sc.resolution_m;
    int w = static_cast<int>(std::ceil(sc.width_m / res - 1e-9));
    int h = static_cast<int>(std::ceil(sc.height_m / res - 1e-9));
    if (w < 3 || h < 3) throw ScenarioError("scenario: arena too small for a boundary wall");

    WorldModel world;
    world.width_m = sc.width_m;
    world.height_m = sc.height_m;
    world.occupancy = Grid<Cell>(w, h, res, Cell::Free);
    world.start = sc.start;

    for (int cy = 0; cy < h; ++cy) {
        for (int cx = 0; cx < w; ++cx) {
            if (cx == 0 || cy == 0 || cx == w - 1 || cy == h - 1)
                world.occupancy.at(cx, cy) = Cell::Occupied;
        }
    }

    // A cell belongs to an obstacle when its center lies inside the rectangle.
    for (const ObstacleRect& r : sc.obstacles) {
        if (r.x < 0 || r.y < 0 || r.x + r.w > sc.width_m + 1e-9 || r.y + r.h > sc.height_m + 1e-9)
            throw ScenarioError("scenario: obstacle extends outside the arena");
        for (int cy = 0; cy < h; ++cy) {
            for (int cx = 0; cx < w; ++cx) {
                Vec2 c = world.occupancy.center_of(cx, cy);
                if (c.x >= r.x && c.x <= r.x + r.w && c.y >= r.y && c.y <= r.y + r.h)
                    world.occupancy.at(cx, cy) = Cell::Occupied;
            }
        }
    }

    for (const HumanSpec& hs : sc.humans) {
        Human hu;
        hu.center = {hs.x, hs.y};
        hu.body_radius = hs.body_radius_m;
        hu.sigma = hs.sigma;
        hu.sample_points = human_boundary_samples(hu.center, hu.body_radius, 12);

        for (int cy = 0; cy < h; ++cy) {
            for (int cx = 0; cx < w; ++cx) {
                if (world.occupancy.at(cx, cy) != Cell::Occupied) continue;
                Vec2 c = world.occupancy.center_of(cx, cy);
                double d = (c - hu.center).norm();
                if (d <= hu.body_radius)
                    throw ScenarioError("scenario: human overlaps an obstacle or wall");
            }
        }
        world.humans.push_back(hu);
    }

    CellIndex sc_cell = world.occupancy.cell_of(sc.start.x, sc.start.y);
    if (!world.occupancy.in_bounds(sc_cell))
        throw ScenarioError("scenario: start pose outside the arena");
    if (world.occupancy.at(sc_cell) == Cell::Occupied)
        throw ScenarioError("scenario: start pose inside an obstacle or wall");
    for (const Human& hu : world.humans) {
        if ((Vec2{sc.start.x, sc.start.y} - hu.center).norm() <= hu.body_radius)
            throw ScenarioError("scenario: start pose inside a human");
    }

    return world;
}

} // namespace ghacpp
