#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ghacpp/world.hpp"

namespace ghacpp {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The file could not be opened or read at all (as opposed to holding an
/// invalid document).
struct ScenarioIoError : ScenarioError {
    using ScenarioError::ScenarioError;
};

struct SensorParams {
    double max_range_m = 8.0;
    double angular_step_deg = 0.5;
    double human_detection_range_m = 4.0;
};

struct RobotParams {
    double inflation_radius_m = 0.30;          // half of the robot size
    double speed_mps = 0.1389;                 // 0.5 km/h
    double turn_rate_radps = kPi / 4.0;
    double lamp_safety_radius_m = 2.0;
};

enum class FootprintSides { Both, LeftOnly, RightOnly };

struct FootprintParams {
    double lobe_reach_m = 0.9;       // lateral semi-axis, from robot center
    double lobe_half_length_m = 0.35; // semi-axis along the body
    FootprintSides sides = FootprintSides::Both;
};

struct GaParams {
    int n = 30;              // population size
    int m = 100;             // generations
    int t = 10;              // stability window for early exit
    int l = 4;               // sample length of the first mutation
    double p_random_sample = 0.2;
    double p_add = 0.4;
    double p_remove = 0.4;
    uint64_t seed = 1;
    double waypoint_resolution_m = 0.5;
    int max_points = 5;
};

struct CostWeights {
    double w_collision = 100.0;
    double w_human = 90.0;
    double w_visited = 10.0;
    double w_neighbour = 8.0;
    double w_turn = 5.0;
    double w_repeat = 3.0;
};

struct CostParams {
    CostWeights weights;
    double sigma_default = 1.0; // m^2, used when a human entry carries none
    double step_m = 0.05;       // interpolation step along segments
    bool turn_penalty_monotone = false;
};

struct MissionParams {
    int max_cycles = 3000;
    /// The mission counts as complete once the explored map has no frontier
    /// left and this share of the reachable known-free area is disinfected.
    double coverage_target_pct = 100.0;
};

struct ObstacleRect {
    double x = 0.0, y = 0.0, w = 0.0, h = 0.0;
};

struct HumanSpec {
    double x = 0.0, y = 0.0;
    double body_radius_m = 0.3;
    double sigma = 1.0;
};

struct Scenario {
    std::string name;
    double width_m = 0.0;
    double height_m = 0.0;
    double resolution_m = 0.05;
    Pose start;
    std::vector<ObstacleRect> obstacles;
    std::vector<HumanSpec> humans;
    SensorParams sensor;
    RobotParams robot;
    FootprintParams footprint;
    GaParams ga;
    CostParams cost;
    MissionParams mission;
};

/// Parses and validates a scenario JSON document. Throws ScenarioError with a
/// human-readable message on any schema violation.
Scenario parse_scenario(const std::string& json_text, const std::string& name_hint);

/// Reads the file and parses it; the scenario name is the file stem.
Scenario load_scenario(const std::string& path);

/// Rasterizes the scenario into a ground-truth world. Throws ScenarioError if
/// the start pose or a human is placed inside an obstacle or outside the arena.
WorldModel build_world(const Scenario& sc);

} // namespace ghacpp
