#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"

#include "ghacpp/executor.hpp"
#include "ghacpp/metrics_report.hpp"
#include "ghacpp/render_svg.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitUnreadable = 2;
constexpr int kExitSchema = 3;
constexpr int kExitMission = 4;

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::vector<uint64_t> parse_seeds(const std::string& spec) {
    std::vector<uint64_t> seeds;
    auto range_pos = spec.find("..");
    if (range_pos != std::string::npos) {
        uint64_t from = std::stoull(spec.substr(0, range_pos));
        uint64_t to = std::stoull(spec.substr(range_pos + 2));
        if (to < from) throw std::invalid_argument("seed range is reversed: " + spec);
        for (uint64_t s = from; s <= to; ++s) seeds.push_back(s);
        return seeds;
    }
    size_t pos = 0;
    while (pos < spec.size()) {
        size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        seeds.push_back(std::stoull(spec.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (seeds.empty()) throw std::invalid_argument("no seeds in: " + spec);
    return seeds;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(s.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

size_t worker_count(size_t jobs) {
    if (const char* env = std::getenv("GHACPP_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return std::min<size_t>(static_cast<size_t>(v), jobs);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return std::min<size_t>(hw ? hw : 1, jobs);
}

int run_single(const std::string& scenario_path, const std::string& algo_s, uint64_t seed,
               const std::string& out_dir, bool with_log, bool with_svg, bool with_map) {
    ghacpp::Scenario sc = ghacpp::load_scenario(scenario_path);
    ghacpp::WorldModel world = ghacpp::build_world(sc);
    ghacpp::Algo algo = ghacpp::algo_from_string(algo_s);
    ghacpp::MissionResult result = ghacpp::run_mission(world, sc, algo, seed);

    std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    std::vector<ghacpp::RunRecord> records{{sc.name, ghacpp::algo_name(algo), seed, result.metrics}};
    write_file(dir / "metrics.csv", ghacpp::metrics_csv(records));
    if (with_log) write_file(dir / "mission.jsonl", ghacpp::to_jsonl(result.log));
    if (with_svg) write_file(dir / "run.svg", ghacpp::render_svg(world, result.maps, result.log));
    if (with_map) write_file(dir / "known_map.txt", ghacpp::dump_known_map(result.maps));

    std::cout << sc.name << " " << ghacpp::algo_name(algo) << " seed=" << seed
              << " end=" << result.end_reason
              << " coverage=" << result.metrics.coverage_pct
              << "% path=" << result.metrics.path_length_m << "m turns=" << result.metrics.n_turns
              << " irradiation=" << result.metrics.irradiation_events << "\n";
    return 0;
}

int run_batch(const std::vector<std::string>& scenario_paths, const std::string& algos_s,
              const std::string& seeds_s, const std::string& out_dir) {
    struct Job {
        size_t scenario_idx;
        ghacpp::Algo algo;
        std::string algo_name;
        uint64_t seed;
    };

    std::vector<ghacpp::Scenario> scenarios;
    std::vector<ghacpp::WorldModel> worlds;
    for (const std::string& p : scenario_paths) {
        scenarios.push_back(ghacpp::load_scenario(p));
        worlds.push_back(ghacpp::build_world(scenarios.back()));
    }
    std::vector<uint64_t> seeds = parse_seeds(seeds_s);
    std::vector<Job> jobs;
    for (size_t i = 0; i < scenarios.size(); ++i) {
        for (const std::string& a : split_csv(algos_s)) {
            ghacpp::Algo algo = ghacpp::algo_from_string(a);
            for (uint64_t s : seeds) jobs.push_back({i, algo, ghacpp::algo_name(algo), s});
        }
    }

    std::vector<ghacpp::RunRecord> records(jobs.size());
    std::atomic<size_t> next{0};
    std::mutex error_mutex;
    std::string first_error;
    auto work = [&]() {
        for (;;) {
            size_t k = next.fetch_add(1);
            if (k >= jobs.size()) return;
            const Job& job = jobs[k];
            try {
                ghacpp::MissionResult r =
                    ghacpp::run_mission(worlds[job.scenario_idx], scenarios[job.scenario_idx],
                                        job.algo, job.seed);
                records[k] = {scenarios[job.scenario_idx].name, job.algo_name, job.seed,
                              r.metrics};
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty()) {
                    first_error = scenarios[job.scenario_idx].name + " " + job.algo_name +
                                  " seed=" + std::to_string(job.seed) + ": " + e.what();
                }
            }
        }
    };
    size_t n_workers = worker_count(jobs.size());
    std::vector<std::thread> pool;
    for (size_t t = 0; t < n_workers; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    if (!first_error.empty()) throw ghacpp::MissionError(first_error);

    std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    std::vector<ghacpp::Aggregate> aggregates = ghacpp::aggregate_records(records);
    write_file(dir / "metrics.csv", ghacpp::metrics_csv(records));
    write_file(dir / "report.csv", ghacpp::report_csv(aggregates));
    write_file(dir / "deltas.csv", ghacpp::deltas_csv(aggregates));
    std::cout << "wrote " << records.size() << " runs to " << (dir / "metrics.csv").string()
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Human-aware genetic coverage planning simulator for a UV-C disinfection robot"};
    app.require_subcommand(1);
    app.footer("Exit codes:\n"
               "  0  success\n"
               "  1  usage error\n"
               "  2  scenario file cannot be read\n"
               "  3  scenario file violates the schema\n"
               "  4  mission or output failure");

    std::string scenario_path;
    std::string algo_s = "ghacpp";
    uint64_t seed = 1;
    std::string out_dir = ".";
    bool with_log = false;
    bool with_svg = false;
    bool with_map = false;

    CLI::App* run = app.add_subcommand("run", "Run one mission and write metrics.csv");
    run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    run->add_option("--algo", algo_s, "Planner: ghacpp or stc")
        ->check(CLI::IsMember({"ghacpp", "stc", "stc-surrogate"}));
    run->add_option("--seed", seed, "Random seed for the genetic planner");
    run->add_option("--out", out_dir, "Output directory (default .)");
    run->add_flag("--log", with_log, "Also write mission.jsonl event log");
    run->add_flag("--svg", with_svg, "Also write run.svg figure");
    run->add_flag("--dump-map", with_map, "Also write known_map.txt");

    std::vector<std::string> batch_scenarios;
    std::string algos_s = "ghacpp,stc";
    std::string seeds_s = "1";
    std::string batch_out;

    CLI::App* batch = app.add_subcommand(
        "batch", "Run a scenario/algo/seed sweep and write metrics.csv, report.csv, deltas.csv");
    batch->add_option("--scenario", batch_scenarios, "Scenario JSON file (repeatable)")
        ->required();
    batch->add_option("--algos", algos_s, "Comma-separated planners (default ghacpp,stc)");
    batch->add_option("--seeds", seeds_s, "Seeds: '1..10' or '1,2,5' (default 1)");
    batch->add_option("--out", batch_out, "Output directory")->required();

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "Parse and validate a scenario file");
    validate->add_option("--scenario", validate_path, "Scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) {
            return run_single(scenario_path, algo_s, seed, out_dir, with_log, with_svg, with_map);
        }
        if (batch->parsed()) {
            return run_batch(batch_scenarios, algos_s, seeds_s, batch_out);
        }
        ghacpp::Scenario sc = ghacpp::load_scenario(validate_path);
        std::cout << sc.name << ": ok\n";
        return 0;
    } catch (const ghacpp::ScenarioIoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnreadable;
    } catch (const ghacpp::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMission;
    }
}
