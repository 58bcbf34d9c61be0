#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aldus/config.hpp"
#include "aldus/csv.hpp"
#include "aldus/error.hpp"
#include "aldus/inject.hpp"
#include "aldus/metrics.hpp"
#include "aldus/pcd.hpp"
#include "aldus/sim.hpp"
#include "aldus/stream.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitSink = 3;

int threads_from_env() {
    if (const char* env = std::getenv("ALDUS_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 0;  // auto
}

void print_summary(const aldus::RunSummary& s) {
    std::fprintf(stderr, "frames=%llu rays=%llu elapsed=%.3fs frames/s=%.1f rays/s=%.3g\n",
                 static_cast<unsigned long long>(s.frames),
                 static_cast<unsigned long long>(s.beams), s.seconds, s.frames_per_sec(),
                 s.rays_per_sec());
}

struct SimulateArgs {
    std::string config_path;
    std::string format;
    std::string out;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t frames = 0;
    bool frames_set = false;
    int threads = -1;
};

int run_simulate(const SimulateArgs& args) {
    aldus::ScenarioConfig cfg = aldus::load_config_file(args.config_path);
    if (args.seed_set) cfg.seed = args.seed;
    if (args.frames_set) {
        if (args.frames < 1) throw aldus::ConfigError("frames must be >= 1");
        cfg.frames = args.frames;
    }
    if (!args.format.empty()) cfg.output.format = args.format;
    if (!args.out.empty()) cfg.output.path = args.out;

    const int threads = args.threads >= 0 ? args.threads : threads_from_env();

    std::unique_ptr<aldus::FrameSink> sink;
    std::ofstream file;
    if (cfg.output.format == "csv") {
        std::ostream* os = &std::cout;
        if (cfg.output.path != "-") {
            file.open(cfg.output.path, std::ios::binary);
            if (!file) {
                std::fprintf(stderr, "error: cannot open output file %s\n",
                             cfg.output.path.c_str());
                return kExitIo;
            }
            os = &file;
        }
        sink = std::make_unique<aldus::CsvSink>(*os, cfg.sensor);
    } else if (cfg.output.format == "pcd") {
        if (cfg.output.path == "-") {
            std::fprintf(stderr, "error: pcd output requires a file path\n");
            return kExitConfig;
        }
        sink = std::make_unique<aldus::PcdSink>(cfg.output.path, cfg.frames);
    } else if (cfg.output.format == "stream") {
        const auto [host, port] = aldus::parse_host_port(cfg.output.path);
        auto stream = std::make_unique<aldus::StreamSink>(host, port);
        std::fprintf(stderr, "listening on %s:%u, waiting for one client...\n", host.c_str(),
                     unsigned(port));
        sink = std::move(stream);
    } else {
        throw aldus::ConfigError("output.format must be one of: csv, pcd, stream");
    }

    const aldus::RunSummary summary = aldus::run_scenario(cfg, *sink, threads);
    print_summary(summary);
    return 0;
}

int run_inject(const std::string& in_path, const std::string& config_path, std::uint64_t seed,
               bool seed_set, const std::string& out_path, int threads_arg) {
    aldus::ScenarioConfig cfg = aldus::load_config_file(config_path);
    if (seed_set) cfg.seed = seed;
    const int threads = threads_arg >= 0 ? threads_arg : threads_from_env();

    const auto points = aldus::read_recorded_csv_file(in_path);
    const aldus::InjectOutput output = aldus::inject_dust(points, cfg, threads);

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (out_path != "-") {
        file.open(out_path, std::ios::binary);
        if (!file) {
            std::fprintf(stderr, "error: cannot open output file %s\n", out_path.c_str());
            return kExitIo;
        }
        os = &file;
    }
    aldus::write_injected_csv(*os, output, cfg.sensor);
    if (!*os) {
        std::fprintf(stderr, "error: write failed: %s\n", out_path.c_str());
        return kExitIo;
    }
    const auto& r = output.report;
    std::fprintf(stderr, "kept=%llu attenuated=%llu replaced=%llu dropped=%llu\n",
                 static_cast<unsigned long long>(r.kept),
                 static_cast<unsigned long long>(r.attenuated),
                 static_cast<unsigned long long>(r.replaced),
                 static_cast<unsigned long long>(r.dropped));
    return 0;
}

int run_sweep(const std::string& config_path, const std::string& param,
              const std::string& values_csv, std::uint64_t replicates, const std::string& out_path,
              int threads_arg) {
    const aldus::ScenarioConfig cfg = aldus::load_config_file(config_path);
    const int threads = threads_arg >= 0 ? threads_arg : threads_from_env();

    std::vector<double> values;
    std::stringstream ss(values_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw aldus::ConfigError("invalid sweep value '" + item + "'");
        }
        if (used != item.size()) throw aldus::ConfigError("invalid sweep value '" + item + "'");
        values.push_back(v);
    }

    const auto rows = aldus::sweep(cfg, param, values, replicates, threads);

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (out_path != "-") {
        file.open(out_path, std::ios::binary);
        if (!file) {
            std::fprintf(stderr, "error: cannot open output file %s\n", out_path.c_str());
            return kExitIo;
        }
        os = &file;
    }
    aldus::write_sweep_csv(*os, rows);
    return 0;
}

int run_bench(const std::string& config_path, std::uint64_t frames, bool frames_set,
              int threads_arg) {
    aldus::ScenarioConfig cfg = aldus::load_config_file(config_path);
    if (frames_set) {
        if (frames < 1) throw aldus::ConfigError("frames must be >= 1");
        cfg.frames = frames;
    }
    const int threads = threads_arg >= 0 ? threads_arg : threads_from_env();
    aldus::NullSink sink;
    const aldus::RunSummary summary = aldus::run_scenario(cfg, sink, threads);
    print_summary(summary);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aldus: LIDAR dust-cloud disturbance simulator"};
    app.require_subcommand(1);

    SimulateArgs sim_args;
    CLI::App* sim = app.add_subcommand("simulate", "Simulate frames and write them to a sink");
    sim->add_option("--config", sim_args.config_path, "Scenario config file")->required();
    auto* sim_seed = sim->add_option("--seed", sim_args.seed, "Override the config seed");
    auto* sim_frames = sim->add_option("--frames", sim_args.frames, "Override the frame count");
    sim->add_option("--format", sim_args.format, "Output format: csv, pcd, stream")
        ->check(CLI::IsMember({"csv", "pcd", "stream"}));
    sim->add_option("--out", sim_args.out, "Output path, '-' for stdout, host:port for stream");
    sim->add_option("--threads", sim_args.threads, "Worker threads (0 = auto)");

    std::string in_path, inj_config, inj_out = "-";
    std::uint64_t inj_seed = 0;
    int inj_threads = -1;
    CLI::App* inj = app.add_subcommand("inject", "Inject dust into a recorded point cloud");
    inj->add_option("--in", in_path, "Recorded CSV input")->required();
    inj->add_option("--config", inj_config, "Scenario config file (sensor + clouds)")->required();
    auto* inj_seed_opt = inj->add_option("--seed", inj_seed, "Override the config seed");
    inj->add_option("--out", inj_out, "Output CSV path, '-' for stdout");
    inj->add_option("--threads", inj_threads, "Worker threads (0 = auto)");

    std::string swp_config, swp_param, swp_values, swp_out = "-";
    std::uint64_t swp_replicates = 1;
    int swp_threads = -1;
    CLI::App* swp = app.add_subcommand("sweep", "Sweep a cloud parameter and emit metrics CSV");
    swp->add_option("--config", swp_config, "Scenario config file")->required();
    swp->add_option("--param", swp_param, "density or cloud_front_distance")->required();
    swp->add_option("--values", swp_values, "Comma-separated values")->required();
    swp->add_option("--replicates", swp_replicates, "Replicates per value (distinct seeds)");
    swp->add_option("--out", swp_out, "Output CSV path, '-' for stdout");
    swp->add_option("--threads", swp_threads, "Worker threads (0 = auto)");

    std::string bench_config;
    std::uint64_t bench_frames = 0;
    int bench_threads = -1;
    CLI::App* bench = app.add_subcommand("bench", "Simulate and discard frames, report throughput");
    bench->add_option("--config", bench_config, "Scenario config file")->required();
    auto* bench_frames_opt = bench->add_option("--frames", bench_frames, "Frame count");
    bench->add_option("--threads", bench_threads, "Worker threads (0 = auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (sim->parsed()) {
            sim_args.seed_set = sim_seed->count() > 0;
            sim_args.frames_set = sim_frames->count() > 0;
            return run_simulate(sim_args);
        }
        if (inj->parsed()) {
            return run_inject(in_path, inj_config, inj_seed, inj_seed_opt->count() > 0, inj_out,
                              inj_threads);
        }
        if (swp->parsed()) {
            return run_sweep(swp_config, swp_param, swp_values, swp_replicates, swp_out,
                             swp_threads);
        }
        if (bench->parsed()) {
            return run_bench(bench_config, bench_frames, bench_frames_opt->count() > 0,
                             bench_threads);
        }
    } catch (const aldus::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const aldus::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitConfig;
    } catch (const aldus::SinkError& e) {
        std::fprintf(stderr, "sink error: %s\n", e.what());
        return kExitSink;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
    return 0;
}
