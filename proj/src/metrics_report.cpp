#include "ghacpp/metrics_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace ghacpp {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

MetricSummary summarize(const std::vector<double>& xs) {
    MetricSummary s;
    if (xs.empty()) return s;
    double sum = 0.0;
    s.min = xs[0];
    s.max = xs[0];
    for (double x : xs) {
        sum += x;
        s.min = std::min(s.min, x);
        s.max = std::max(s.max, x);
    }
    s.mean = sum / static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(var / static_cast<double>(xs.size()));
    return s;
}

std::vector<RunRecord> sorted_records(std::vector<RunRecord> records) {
    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        if (a.scenario != b.scenario) return a.scenario < b.scenario;
        if (a.algo != b.algo) return a.algo < b.algo;
        return a.seed < b.seed;
    });
    return records;
}

void append_summary(std::string& out, const MetricSummary& s) {
    out += ',';
    out += fmt(s.mean);
    out += ',';
    out += fmt(s.min);
    out += ',';
    out += fmt(s.max);
    out += ',';
    out += fmt(s.sd);
}

} // namespace

std::vector<Aggregate> aggregate_records(const std::vector<RunRecord>& records) {
    std::map<std::pair<std::string, std::string>, std::vector<const RunRecord*>> groups;
    for (const RunRecord& r : records) groups[{r.scenario, r.algo}].push_back(&r);

    std::vector<Aggregate> out;
    for (const auto& [key, rows] : groups) {
        Aggregate a;
        a.scenario = key.first;
        a.algo = key.second;
        a.n = static_cast<int>(rows.size());
        std::vector<double> col;
        auto collect = [&](auto&& get) {
            col.clear();
            for (const RunRecord* r : rows) col.push_back(get(r->metrics));
            return summarize(col);
        };
        a.coverage_pct = collect([](const RunMetrics& m) { return m.coverage_pct; });
        a.path_length_m = collect([](const RunMetrics& m) { return m.path_length_m; });
        a.n_turns = collect([](const RunMetrics& m) { return static_cast<double>(m.n_turns); });
        a.total_turn_angle_rad =
            collect([](const RunMetrics& m) { return m.total_turn_angle_rad; });
        a.time_s = collect([](const RunMetrics& m) { return m.time_s; });
        a.irradiation_events =
            collect([](const RunMetrics& m) { return static_cast<double>(m.irradiation_events); });
        a.planning_wallclock_ms =
            collect([](const RunMetrics& m) { return m.planning_wallclock_ms; });
        out.push_back(std::move(a));
    }
    return out;
}

std::string metrics_csv(const std::vector<RunRecord>& records) {
    std::string out = "scenario,algo,seed,coverage_pct,path_length_m,n_turns,"
                      "total_turn_angle_rad,time_s,irradiation_events,planning_wallclock_ms\n";
    for (const RunRecord& r : sorted_records(records)) {
        out += r.scenario;
        out += ',';
        out += r.algo;
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += fmt(r.metrics.coverage_pct);
        out += ',';
        out += fmt(r.metrics.path_length_m);
        out += ',';
        out += std::to_string(r.metrics.n_turns);
        out += ',';
        out += fmt(r.metrics.total_turn_angle_rad);
        out += ',';
        out += fmt(r.metrics.time_s);
        out += ',';
        out += std::to_string(r.metrics.irradiation_events);
        out += ',';
        out += fmt(r.metrics.planning_wallclock_ms);
        out += '\n';
    }
    return out;
}

std::string report_csv(const std::vector<Aggregate>& aggregates) {
    std::string out = "# sd=population\n";
    out += "scenario,algo,n";
    const char* metrics[] = {"coverage_pct",         "path_length_m", "n_turns",
                             "total_turn_angle_rad", "time_s",        "irradiation_events",
                             "planning_wallclock_ms"};
    for (const char* m : metrics) {
        out += std::string(",") + m + "_mean," + m + "_min," + m + "_max," + m + "_sd";
    }
    out += '\n';
    for (const Aggregate& a : aggregates) {
        out += a.scenario;
        out += ',';
        out += a.algo;
        out += ',';
        out += std::to_string(a.n);
        append_summary(out, a.coverage_pct);
        append_summary(out, a.path_length_m);
        append_summary(out, a.n_turns);
        append_summary(out, a.total_turn_angle_rad);
        append_summary(out, a.time_s);
        append_summary(out, a.irradiation_events);
        append_summary(out, a.planning_wallclock_ms);
        out += '\n';
    }
    return out;
}

std::string deltas_csv(const std::vector<Aggregate>& aggregates) {
    std::map<std::string, const Aggregate*> ghacpp;
    std::map<std::string, const Aggregate*> stc;
    for (const Aggregate& a : aggregates) {
        if (a.algo == "ghacpp") ghacpp[a.scenario] = &a;
        if (a.algo == "stc-surrogate") stc[a.scenario] = &a;
    }
    std::string out = "# delta = (baseline_mean - ghacpp_mean) / baseline_mean\n";
    out += "scenario,coverage_pct,path_length_m,n_turns,total_turn_angle_rad,time_s,"
           "irradiation_events\n";
    for (const auto& [scenario, g] : ghacpp) {
        auto it = stc.find(scenario);
        if (it == stc.end()) continue;
        const Aggregate* b = it->second;
        auto delta = [](double base, double ours) -> std::string {
            if (base == 0.0) return "";
            return fmt((base - ours) / base);
        };
        out += scenario;
        out += ',';
        out += delta(b->coverage_pct.mean, g->coverage_pct.mean);
        out += ',';
        out += delta(b->path_length_m.mean, g->path_length_m.mean);
        out += ',';
        out += delta(b->n_turns.mean, g->n_turns.mean);
        out += ',';
        out += delta(b->total_turn_angle_rad.mean, g->total_turn_angle_rad.mean);
        out += ',';
        out += delta(b->time_s.mean, g->time_s.mean);
        out += ',';
        out += delta(b->irradiation_events.mean, g->irradiation_events.mean);
        out += '\n';
    }
    return out;
}

} // namespace ghacpp
