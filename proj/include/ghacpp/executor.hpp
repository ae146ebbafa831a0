#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ghacpp/baseline_stc.hpp"
#include "ghacpp/cost.hpp"
#include "ghacpp/genetic.hpp"

namespace ghacpp {

enum class Algo { Ghacpp, Stc };

Algo algo_from_string(const std::string& s);
std::string algo_name(Algo a);

struct MissionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SenseUpdateEvent {
    long long newly_known = 0;
};

struct MiniTrajectorySelectedEvent {
    Chromosome points;
    CostBreakdown cost;
    bool transit = false;
};

struct WaypointReachedEvent {
    Pose pose;
    bool lamps_on = true;
};

struct LampInterlockEvent {
    int human_id = -1;
    Pose pose;
};

struct IrradiationRecord {
    int human_id = -1;
    Pose pose;
};

struct MissionEndEvent {
    std::string reason; // "complete" or "timeout"
};

using EventPayload = std::variant<SenseUpdateEvent, MiniTrajectorySelectedEvent,
                                  WaypointReachedEvent, LampInterlockEvent, IrradiationRecord,
                                  MissionEndEvent>;

struct Event {
    int cycle = 0;
    EventPayload payload;
};

struct MissionLog {
    std::vector<Event> events;
};

/// One JSON object per line, one line per event, in log order.
std::string to_jsonl(const MissionLog& log);

struct RunMetrics {
    double coverage_pct = 0.0;
    double path_length_m = 0.0;
    long long n_turns = 0;
    double total_turn_angle_rad = 0.0;
    double time_s = 0.0;
    long long irradiation_events = 0;
    double planning_wallclock_ms = 0.0;
};

/// Derives metrics from the event log and final maps. Traversal figures come
/// from the WaypointReached sequence; time is path over speed plus total
/// heading change over turn rate. Coverage is the disinfected share of the
/// known-free cells reachable (8-connected) from the start cell. Throws
/// MissionError when no known-free cell is reachable from the start.
RunMetrics compute_metrics(const MissionLog& log, const KnownMaps& maps,
                           const RobotParams& robot);

struct MissionResult {
    MissionLog log;
    RunMetrics metrics;
    KnownMaps maps;
    std::string end_reason;
};

/// Runs a full mission: repeated sense, plan, execute cycles until the
/// planner reports completion or the cycle budget runs out. The seed drives
/// the genetic planner; the baseline ignores it.
MissionResult run_mission(const WorldModel& world, const Scenario& scenario, Algo algo,
                          uint64_t seed);

/// True when every interpolated pose between the two lattice points sits on
/// a traversable configuration-space cell.
bool lattice_edge_clear(const KnownMaps& maps, const LatticePoint& a, const LatticePoint& b,
                        double step_m);

} // namespace ghacpp
