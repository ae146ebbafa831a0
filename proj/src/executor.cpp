#include "ghacpp/executor.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <map>

#include "json.hpp"

namespace ghacpp {

Algo algo_from_string(const std::string& s) {
    if (s == "ghacpp") return Algo::Ghacpp;
    if (s == "stc" || s == "stc-surrogate") return Algo::Stc;
    throw std::invalid_argument("unknown algorithm: " + s + " (expected ghacpp or stc)");
}

std::string algo_name(Algo a) { return a == Algo::Ghacpp ? "ghacpp" : "stc-surrogate"; }

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

nlohmann::json pose_json(const Pose& p) {
    return {{"x", p.x}, {"y", p.y}, {"heading", p.heading}};
}

} // namespace

std::string to_jsonl(const MissionLog& log) {
    std::string out;
    for (const Event& e : log.events) {
        nlohmann::json j;
        j["cycle"] = e.cycle;
        std::visit(
            Overloaded{
                [&](const SenseUpdateEvent& s) {
                    j["type"] = "SenseUpdate";
                    j["newly_known"] = s.newly_known;
                },
                [&](const MiniTrajectorySelectedEvent& s) {
                    j["type"] = "MiniTrajectorySelected";
                    j["transit"] = s.transit;
                    nlohmann::json pts = nlohmann::json::array();
                    for (const LatticePoint& p : s.points) pts.push_back({p.i, p.j});
                    j["points"] = pts;
                    j["cost"] = {{"total", s.cost.total},       {"collision", s.cost.collision},
                                 {"human", s.cost.human},       {"visited", s.cost.visited},
                                 {"neighbour", s.cost.neighbour}, {"turn", s.cost.turn},
                                 {"repeat", s.cost.repeat}};
                },
                [&](const WaypointReachedEvent& s) {
                    j["type"] = "WaypointReached";
                    j["pose"] = pose_json(s.pose);
                    j["lamps_on"] = s.lamps_on;
                },
                [&](const LampInterlockEvent& s) {
                    j["type"] = "LampInterlock";
                    j["human_id"] = s.human_id;
                    j["pose"] = pose_json(s.pose);
                },
                [&](const IrradiationRecord& s) {
                    j["type"] = "IrradiationEvent";
                    j["human_id"] = s.human_id;
                    j["pose"] = pose_json(s.pose);
                },
                [&](const MissionEndEvent& s) {
                    j["type"] = "MissionEnd";
                    j["reason"] = s.reason;
                },
            },
            e.payload);
        out += j.dump();
        out += '\n';
    }
    return out;
}

namespace {

/// Disinfected share of the known-free region 8-connected to the start
/// cell, or -1 while the start cell is not yet known free.
double covered_share(const KnownMaps& maps, const CellIndex& start) {
    if (!maps.known.in_bounds(start) || maps.known.at(start) != Known::Free) return -1.0;
    long long den = 0;
    long long num = 0;
    Grid<uint8_t> seen(maps.known.width(), maps.known.height(), maps.known.resolution(), 0);
    std::deque<CellIndex> queue{start};
    seen.at(start) = 1;
    while (!queue.empty()) {
        CellIndex c = queue.front();
        queue.pop_front();
        ++den;
        if (maps.disinfected.at(c)) ++num;
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                CellIndex q{c.cx + dx, c.cy + dy};
                if (!maps.known.in_bounds(q) || seen.at(q)) continue;
                if (maps.known.at(q) != Known::Free) continue;
                seen.at(q) = 1;
                queue.push_back(q);
            }
        }
    }
    if (den == 0) return -1.0;
    return static_cast<double>(num) / static_cast<double>(den);
}

} // namespace

RunMetrics compute_metrics(const MissionLog& log, const KnownMaps& maps,
                           const RobotParams& robot) {
    RunMetrics m;
    std::vector<Pose> wps;
    for (const Event& e : log.events) {
        if (const auto* w = std::get_if<WaypointReachedEvent>(&e.payload)) {
            wps.push_back(w->pose);
        } else if (std::holds_alternative<IrradiationRecord>(e.payload)) {
            ++m.irradiation_events;
        }
    }
    if (wps.empty()) throw MissionError("mission log has no waypoints");

    for (size_t k = 1; k < wps.size(); ++k) {
        m.path_length_m += std::hypot(wps[k].x - wps[k - 1].x, wps[k].y - wps[k - 1].y);
        double dh = heading_diff(wps[k - 1].heading, wps[k].heading);
        if (dh > 1e-12) {
            ++m.n_turns;
            m.total_turn_angle_rad += dh;
        }
    }
    m.time_s = m.path_length_m / robot.speed_mps + m.total_turn_angle_rad / robot.turn_rate_radps;

    CellIndex start = maps.known.cell_of(wps.front().x, wps.front().y);
    double share = covered_share(maps, start);
    if (share < 0.0) throw MissionError("coverage undefined: no known free cells reachable from start");
    m.coverage_pct = 100.0 * share;
    return m;
}

bool lattice_edge_clear(const KnownMaps& maps, const LatticePoint& a, const LatticePoint& b,
                        double step_m) {
    Vec2 wa = maps.lattice.to_world(a);
    Vec2 wb = maps.lattice.to_world(b);
    Vec2 d = wb - wa;
    double len = d.norm();
    int n = std::max(1, static_cast<int>(std::ceil(len / step_m - 1e-9)));
    for (int i = 0; i <= n; ++i) {
        double f = static_cast<double>(i) / n;
        CellIndex c = maps.cspace.cell_of(wa.x + d.x * f, wa.y + d.y * f);
        if (!maps.cspace.in_bounds(c) || maps.cspace.at(c) == CSpace::Blocked) return false;
    }
    return true;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct TransitPlan {
    bool found = false;
    bool rotation_only = false;
    std::vector<LatticePoint> path; // starts at the robot's lattice point
    double heading = 0.0;           // footprint heading to assume at the target
    bool rotate_at_target = false;  // whether `heading` applies on arrival
};

class MissionRunner {
  public:
    MissionRunner(const WorldModel& world, const Scenario& sc, Algo algo, uint64_t seed)
        : world_(world),
          sc_(sc),
          algo_(algo),
          maps_(make_known_maps(world, sc.robot.inflation_radius_m, sc.ga.waypoint_resolution_m,
                                world.humans.size())),
          masks_(sc.footprint, sc.resolution_m),
          rng_(seed),
          exposed_(world.humans.size(), false) {
        pose_ = world.start;
        pose_.heading = quantize_heading(pose_.heading);
        start_cell_ = maps_.known.cell_of(pose_.x, pose_.y);
    }

    MissionResult run() {
        log_.events.push_back({0, WaypointReachedEvent{pose_, lamps_}});
        int cycle = 1;
        for (; cycle <= sc_.mission.max_cycles; ++cycle) {
            long long newly = sense_and_update(maps_, world_, pose_, sc_.sensor);
            log_.events.push_back({cycle, SenseUpdateEvent{newly}});
            if (cycle == 1) {
                CellIndex c = maps_.cspace.cell_of(pose_.x, pose_.y);
                if (!maps_.cspace.in_bounds(c) || maps_.cspace.at(c) == CSpace::Blocked) {
                    throw MissionError("start pose is blocked in configuration space");
                }
            }
            update_lamps(pose_, cycle);
            bool done = algo_ == Algo::Ghacpp ? ghacpp_cycle(cycle) : stc_cycle(cycle);
            if (done) break;
            if (covered_share(maps_, start_cell_) >= sc_.mission.coverage_target_pct / 100.0 &&
                frontier_cells(maps_).empty()) {
                end_reason_ = "complete";
                break;
            }
        }
        if (end_reason_.empty()) end_reason_ = "timeout";
        int end_cycle = std::min(cycle, sc_.mission.max_cycles);
        log_.events.push_back({end_cycle, MissionEndEvent{end_reason_}});

        MissionResult result;
        result.metrics = compute_metrics(log_, maps_, sc_.robot);
        result.metrics.planning_wallclock_ms = wallclock_ms_;
        result.log = std::move(log_);
        result.maps = std::move(maps_);
        result.end_reason = end_reason_;
        return result;
    }

  private:
    bool ghacpp_cycle(int cycle) {
        Clock::time_point t0 = Clock::now();
        CostEvaluator ev(maps_, sc_.cost, masks_);
        CostFn fn = [&ev](const Chromosome& c) { return ev.total_cost(c); };
        EvolveResult best;
        bool clear = false;
        for (int attempt = 0; attempt < 5 && !clear; ++attempt) {
            best = evolve_mini_trajectory(cur_, sc_.ga, rng_, fn);
            clear = ev.evaluate(best.best).collision == 0.0;
        }
        wallclock_ms_ += ms_since(t0);

        if (!clear) {
            // Everything the search proposes collides; face the largest
            // unexplored region so the next sweep opens space up.
            rotate_to(frontier_bearing(), cycle);
            return false;
        }

        if (prospective_gain(best.best, ev) > 0) {
            log_.events.push_back(
                {cycle, MiniTrajectorySelectedEvent{best.best, ev.evaluate(best.best), false}});
            execute_path(best.best, cycle);
            mark_visited(maps_, best.best);
            stagnant_ = 0;
            return false;
        }

        // The search came back with a plan that disinfects nothing new, so
        // head for the closest spot that still needs work instead of
        // executing a pointless wander.
        Clock::time_point t1 = Clock::now();
        TransitPlan transit = plan_transit(ev);
        wallclock_ms_ += ms_since(t1);
        if (transit.found) {
            stagnant_ = 0;
            if (transit.rotation_only) {
                log_.events.push_back(
                    {cycle, MiniTrajectorySelectedEvent{{cur_}, ev.evaluate({cur_}), true}});
                rotate_to(transit.heading, cycle);
            } else {
                size_t take = std::min<size_t>(transit.path.size(),
                                               static_cast<size_t>(sc_.ga.max_points));
                Chromosome chunk(transit.path.begin(),
                                 transit.path.begin() + static_cast<long>(take));
                log_.events.push_back(
                    {cycle, MiniTrajectorySelectedEvent{chunk, ev.evaluate(chunk), true}});
                execute_path(chunk, cycle);
                mark_visited(maps_, chunk);
                if (take == transit.path.size() && transit.rotate_at_target &&
                    heading_diff(pose_.heading, transit.heading) > 1e-12) {
                    rotate_to(transit.heading, cycle);
                }
            }
            return false;
        }

        ++stagnant_;
        if (stagnant_ >= 3) {
            end_reason_ = "complete";
            return true;
        }
        return false;
    }

    bool stc_cycle(int cycle) {
        Clock::time_point t0 = Clock::now();
        StcPlanner::Step st = stc_.step(maps_, cur_);
        wallclock_ms_ += ms_since(t0);
        if (st.complete) {
            end_reason_ = "complete";
            return true;
        }
        execute_path({cur_, st.next}, cycle);
        return false;
    }

    bool lamps_allowed(const Vec2& pos) const {
        if (algo_ == Algo::Stc) return true;
        for (const SensedHuman& h : maps_.humans) {
            if (!h.seen) continue;
            for (const Vec2& p : h.points) {
                if ((p - pos).norm() <= sc_.robot.lamp_safety_radius_m) return false;
            }
        }
        return true;
    }

    int nearest_sensed_human(const Vec2& pos) const {
        int id = -1;
        double best = 0.0;
        for (size_t h = 0; h < maps_.humans.size(); ++h) {
            if (!maps_.humans[h].seen) continue;
            for (const Vec2& p : maps_.humans[h].points) {
                double d = (p - pos).norm();
                if (id < 0 || d < best) {
                    id = static_cast<int>(h);
                    best = d;
                }
            }
        }
        return id;
    }

    void update_lamps(const Pose& at, int cycle) {
        bool now = lamps_allowed(at.position());
        if (lamps_ && !now) {
            log_.events.push_back({cycle, LampInterlockEvent{nearest_sensed_human(at.position()), at}});
        }
        lamps_ = now;
    }

    void check_irradiation(const Pose& at, int cycle) {
        for (size_t h = 0; h < world_.humans.size(); ++h) {
            bool inside = false;
            if (lamps_) {
                for (const Vec2& p : world_.humans[h].sample_points) {
                    if (footprint_covers(sc_.footprint, at, p)) {
                        inside = true;
                        break;
                    }
                }
            }
            if (inside && !exposed_[h]) {
                log_.events.push_back({cycle, IrradiationRecord{static_cast<int>(h), at}});
            }
            exposed_[h] = inside;
        }
    }

    long long visit_pose(const Pose& at, int cycle) {
        update_lamps(at, cycle);
        long long gain = stamp_disinfection(maps_, at, masks_, lamps_);
        check_irradiation(at, cycle);
        return gain;
    }

    long long execute_path(const Chromosome& pts, int cycle) {
        long long gain = 0;
        if (pts.size() <= 1) {
            gain += visit_pose(pose_, cycle);
            log_.events.push_back({cycle, WaypointReachedEvent{pose_, lamps_}});
            return gain;
        }
        for (size_t k = 1; k < pts.size(); ++k) {
            Vec2 a = maps_.lattice.to_world(pts[k - 1]);
            Vec2 b = maps_.lattice.to_world(pts[k]);
            Vec2 d = b - a;
            double heading = quantize_heading(std::atan2(d.y, d.x));
            double len = d.norm();
            int n = std::max(1, static_cast<int>(std::ceil(len / sc_.cost.step_m - 1e-9)));
            for (int i = 0; i <= n; ++i) {
                double f = static_cast<double>(i) / n;
                Pose p{a.x + d.x * f, a.y + d.y * f, heading};
                gain += visit_pose(p, cycle);
            }
            pose_ = Pose{b.x, b.y, heading};
            log_.events.push_back({cycle, WaypointReachedEvent{pose_, lamps_}});
        }
        cur_ = pts.back();
        return gain;
    }

    long long rotate_to(double heading, int cycle) {
        pose_.heading = quantize_heading(heading);
        long long gain = visit_pose(pose_, cycle);
        log_.events.push_back({cycle, WaypointReachedEvent{pose_, lamps_}});
        return gain;
    }

    double frontier_bearing() const {
        std::vector<CellIndex> cells = frontier_cells(maps_);
        if (cells.empty()) return quantize_heading(pose_.heading + kPi / 4.0);
        std::map<CellIndex, int> label;
        int best_size = 0;
        Vec2 best_centroid{};
        for (const CellIndex& c : cells) label[c] = -1;
        int next_label = 0;
        for (const CellIndex& c : cells) {
            if (label[c] >= 0) continue;
            std::deque<CellIndex> queue{c};
            label[c] = next_label;
            int size = 0;
            Vec2 sum{};
            while (!queue.empty()) {
                CellIndex q = queue.front();
                queue.pop_front();
                ++size;
                Vec2 ctr = maps_.known.center_of(q);
                sum = sum + ctr;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        CellIndex r{q.cx + dx, q.cy + dy};
                        auto it = label.find(r);
                        if (it != label.end() && it->second < 0) {
                            it->second = next_label;
                            queue.push_back(r);
                        }
                    }
                }
            }
            if (size > best_size) {
                best_size = size;
                best_centroid = sum * (1.0 / size);
            }
            ++next_label;
        }
        double bearing = std::atan2(best_centroid.y - pose_.y, best_centroid.x - pose_.x);
        double q = quantize_heading(bearing);
        if (heading_diff(q, pose_.heading) < 1e-12) q = quantize_heading(q + kPi / 4.0);
        return q;
    }

    /// Fresh cells the plan would actually disinfect, honoring the lamp
    /// interlock along the way. Zero means executing it changes nothing.
    long long prospective_gain(const Chromosome& c, const CostEvaluator& ev) const {
        if (c.size() <= 1) {
            if (!lamps_allowed(pose_.position())) return 0;
            CellIndex base = maps_.known.cell_of(pose_.x, pose_.y);
            if (!maps_.known.in_bounds(base)) return 0;
            return ev.fresh_gain(base, pose_.heading);
        }
        long long total = 0;
        for (const Pose& p : interpolate(c, maps_.lattice, sc_.cost.step_m)) {
            if (!lamps_allowed(p.position())) continue;
            CellIndex base = maps_.known.cell_of(p.x, p.y);
            if (!maps_.known.in_bounds(base)) continue;
            total += ev.fresh_gain(base, p.heading);
        }
        return total;
    }

    TransitPlan plan_transit(const CostEvaluator& ev) const {
        TransitPlan t;
        if (lamps_allowed(maps_.lattice.to_world(cur_))) {
            CostEvaluator::GainProbe g = ev.best_gain(cur_);
            if (g.cells > 0 && heading_diff(g.heading, pose_.heading) > 1e-12) {
                t.found = true;
                t.rotation_only = true;
                t.heading = g.heading;
                t.path = {cur_};
                return t;
            }
        }

        std::vector<CellIndex> frontier = frontier_cells(maps_);
        std::vector<Vec2> frontier_pts;
        frontier_pts.reserve(frontier.size());
        for (const CellIndex& c : frontier) frontier_pts.push_back(maps_.known.center_of(c));
        const double rho = maps_.inflation_radius + maps_.lattice.spacing;

        // Breadth-first over lattice moves; within the closest layer that
        // offers any disinfection gain, take the point with the most of it.
        // A spot near the unknown frontier is kept as the fallback target so
        // exploration continues when nothing known needs the lamps.
        std::map<LatticePoint, LatticePoint> parent;
        std::vector<LatticePoint> layer{cur_};
        parent[cur_] = cur_;
        bool gain_found = false;
        LatticePoint gain_target{};
        CostEvaluator::GainProbe gain_probe;
        bool frontier_found = false;
        LatticePoint frontier_target{};
        while (!layer.empty()) {
            for (const LatticePoint& p : layer) {
                if (p == cur_) continue;
                if (!lamps_allowed(maps_.lattice.to_world(p))) continue;
                CostEvaluator::GainProbe g = ev.best_gain(p);
                if (g.cells > gain_probe.cells) {
                    gain_probe = g;
                    gain_target = p;
                    gain_found = true;
                }
            }
            if (gain_found) break;
            if (!frontier_found) {
                for (const LatticePoint& p : layer) {
                    if (p == cur_) continue;
                    Vec2 w = maps_.lattice.to_world(p);
                    for (const Vec2& f : frontier_pts) {
                        if ((f - w).norm() <= rho) {
                            frontier_found = true;
                            frontier_target = p;
                            break;
                        }
                    }
                    if (frontier_found) break;
                }
            }
            std::vector<LatticePoint> next;
            for (const LatticePoint& p : layer) {
                for (int d = 0; d < 8; ++d) {
                    LatticePoint q{p.i + kDir8DX[d], p.j + kDir8DY[d]};
                    if (parent.count(q)) continue;
                    if (!maps_.lattice_traversable(q)) continue;
                    if (!lattice_edge_clear(maps_, p, q, sc_.cost.step_m)) continue;
                    parent[q] = p;
                    next.push_back(q);
                }
            }
            layer = std::move(next);
        }

        LatticePoint target{};
        if (gain_found) {
            target = gain_target;
            t.heading = gain_probe.heading;
            t.rotate_at_target = true;
        } else if (frontier_found) {
            target = frontier_target;
        } else {
            return t;
        }
        std::vector<LatticePoint> rev{target};
        while (!(rev.back() == cur_)) rev.push_back(parent.at(rev.back()));
        t.path.assign(rev.rbegin(), rev.rend());
        t.found = true;
        return t;
    }

    const WorldModel& world_;
    const Scenario& sc_;
    Algo algo_;
    KnownMaps maps_;
    FootprintMasks masks_;
    Rng rng_;
    MissionLog log_;
    StcPlanner stc_;
    Pose pose_;
    LatticePoint cur_{0, 0};
    CellIndex start_cell_{0, 0};
    bool lamps_ = true;
    std::vector<bool> exposed_;
    double wallclock_ms_ = 0.0;
    int stagnant_ = 0;
    std::string end_reason_;
};

} // namespace

MissionResult run_mission(const WorldModel& world, const Scenario& scenario, Algo algo,
                          uint64_t seed) {
    MissionRunner runner(world, scenario, algo, seed);
    return runner.run();
}

} // namespace ghacpp
