#pragma once

#include <string>
#include <vector>

#include "ghacpp/executor.hpp"

namespace ghacpp {

struct RunRecord {
    std::string scenario;
    std::string algo;
    uint64_t seed = 0;
    RunMetrics metrics;
};

/// Per-metric summary over the seeds of one (scenario, algo) pair. The
/// spread column is the population standard deviation (divide by n).
struct MetricSummary {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double sd = 0.0;
};

struct Aggregate {
    std::string scenario;
    std::string algo;
    int n = 0;
    MetricSummary coverage_pct;
    MetricSummary path_length_m;
    MetricSummary n_turns;
    MetricSummary total_turn_angle_rad;
    MetricSummary time_s;
    MetricSummary irradiation_events;
    MetricSummary planning_wallclock_ms;
};

/// Groups records by (scenario, algo), sorted lexicographically.
std::vector<Aggregate> aggregate_records(const std::vector<RunRecord>& records);

/// Raw per-run rows. Header:
/// scenario,algo,seed,coverage_pct,path_length_m,n_turns,total_turn_angle_rad,time_s,irradiation_events,planning_wallclock_ms
/// Rows are sorted by (scenario, algo, seed).
std::string metrics_csv(const std::vector<RunRecord>& records);

/// Aggregated mean/min/max/sd rows per (scenario, algo).
std::string report_csv(const std::vector<Aggregate>& aggregates);

/// Relative change of the baseline-vs-ghacpp means per scenario, computed as
/// (stc - ghacpp) / stc per metric. Scenarios lacking either algorithm are
/// skipped; a zero baseline mean yields an empty field.
std::string deltas_csv(const std::vector<Aggregate>& aggregates);

} // namespace ghacpp
