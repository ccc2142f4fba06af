// gangsched: partition, analyse, simulate and benchmark rigid gang task sets.

#include <gangsched/experiments.hpp>
#include <gangsched/generator.hpp>
#include <gangsched/partitioning.hpp>
#include <gangsched/simulator.hpp>
#include <gangsched/taskset_io.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace gangsched;

namespace {

struct ConfigFlags {
    std::string variant = "sp-u";
    std::string policy = "fp";
    bool nonpreemptive = false;
    std::string gang_test;
    double utilization_bound = 1.0;

    void attach(CLI::App* app) {
        app->add_option("--variant", variant, "sp-u, sp-g or sp-b")
            ->check(CLI::IsMember({"sp-u", "sp-g", "sp-b"}));
        app->add_option("--policy", policy, "fp or edf")->check(CLI::IsMember({"fp", "edf"}));
        app->add_flag("--np,--non-preemptive", nonpreemptive, "non-preemptive scheduling");
        app->add_option("--gang-test", gang_test, "gang test name for sp-g");
        app->add_option("--ub", utilization_bound, "per-partition utilization bound (sp-b)");
    }

    PartitionerConfig build() const {
        PartitionerConfig config;
        config.variant = variant == "sp-g" ? Variant::SpG : variant == "sp-b" ? Variant::SpB : Variant::SpU;
        config.scheduler.policy = policy == "edf" ? Policy::Edf : Policy::FixedPriority;
        config.scheduler.preemption = nonpreemptive ? Preemption::NonPreemptive : Preemption::Preemptive;
        config.scheduler.scope = config.variant == Variant::SpG ? Scope::Gang : Scope::Uniprocessor;
        config.gang_test = gang_test;
        config.utilization_bound = Rational(utilization_bound);
        return config;
    }
};

std::map<TaskId, Time> parse_offsets(const std::string& text) {
    std::map<TaskId, Time> offsets;
    std::stringstream list(text);
    std::string item;
    while (std::getline(list, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::InvalidConfig, "offset '" + item + "' is not id=tick");
        offsets[std::stoi(item.substr(0, eq))] = std::stoll(item.substr(eq + 1));
    }
    return offsets;
}

void print_summary(const ExperimentResult& result, const fs::path& out) {
    write_rows(std::cout, result.averaged);
    std::cerr << "spot checks: " << result.spot_checks << ", misses: " << result.spot_check_misses
              << '\n';
    if (!out.empty())
        std::cerr << "wrote " << out.string() << " and " << averaged_path(out).string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strict partitioning analysis for rigid gang tasks"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "write generated task-set files");
    GenSpec spec;
    std::string level = "low";
    std::string card;
    int count = 1;
    fs::path gen_out = ".";
    gen->add_option("-M,--processors", spec.processors, "processor count");
    gen->add_option("-n,--tasks", spec.tasks, "task count");
    gen->add_option("--level", level, "volume level: low, medium, high");
    gen->add_option("--util", spec.normalized_utilization, "normalized utilization U/M");
    gen->add_option("--seed", spec.seed, "random seed");
    gen->add_option("--count", count, "number of sets")->check(CLI::PositiveNumber);
    gen->add_option("--card", card, "Edge TPU card (8 or 16) instead of synthetic tasks");
    gen->add_option("--out", gen_out, "output directory");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "partition and analyse one task-set file");
    fs::path analyze_path;
    ConfigFlags analyze_flags;
    analyze->add_option("file", analyze_path, "task-set file")->required();
    analyze_flags.attach(analyze);

    // grid
    auto* grid_cmd = app.add_subcommand("grid", "schedulability-ratio sweep over synthetic sets");
    ExperimentGrid grid;
    fs::path grid_out = "grid.csv";
    std::string grid_tests;
    bool grid_paper = false;
    grid_cmd->add_option("--seed", grid.seed, "base seed");
    grid_cmd->add_option("--out", grid_out, "per-cell CSV path");
    grid_cmd->add_option("--sets-per-cell", grid.sets_per_cell, "task sets per cell");
    grid_cmd->add_option("--tests", grid_tests, "comma-separated test names");
    grid_cmd->add_flag("--paper-scale", grid_paper, "1000 sets per cell");
    grid_cmd->add_option("--processors", grid.processors, "platform sizes");
    grid_cmd->add_option("--threads", grid.threads, "worker threads (0 = all cores)");

    // casestudy
    auto* case_cmd = app.add_subcommand("casestudy", "Edge TPU case study");
    CaseStudyConfig study;
    std::string case_card = "8";
    fs::path case_out = "casestudy.csv";
    std::string case_tests;
    bool case_paper = false;
    case_cmd->add_option("--card", case_card, "8 or 16");
    case_cmd->add_option("--seed", study.seed, "base seed");
    case_cmd->add_option("--out", case_out, "CSV path");
    case_cmd->add_option("--sets-per-cell", study.sets_per_cell, "task sets per utilization");
    case_cmd->add_option("--tests", case_tests, "comma-separated test names");
    case_cmd->add_flag("--paper-scale", case_paper, "1000 sets per utilization");
    case_cmd->add_option("--threads", study.threads, "worker threads (0 = all cores)");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "simulate a task set and export the trace");
    fs::path sim_path;
    fs::path sim_out;
    ConfigFlags sim_flags;
    bool sim_global = false;
    Time sim_horizon = 0;
    std::string sim_offsets;
    sim_cmd->add_option("file", sim_path, "task-set file")->required();
    sim_flags.attach(sim_cmd);
    sim_cmd->add_flag("--global", sim_global, "global gang scheduling on all processors");
    sim_cmd->add_option("--horizon", sim_horizon, "ticks to simulate (default: hyperperiod)");
    sim_cmd->add_option("--offsets", sim_offsets, "explicit first releases, id=tick,...");
    sim_cmd->add_option("--out", sim_out, "trace file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            fs::create_directories(gen_out);
            for (int k = 0; k < count; ++k) {
                const auto seed = derive_seed(spec.seed, {std::uint64_t(k)});
                GeneratedSet set;
                if (!card.empty()) {
                    set = edge_tpu_suite(parse_card(card), spec.normalized_utilization, seed);
                } else {
                    GenSpec one = spec;
                    one.level = parse_volume_level(level);
                    one.seed = seed;
                    set = gen_taskset(one);
                }
                char name[32];
                std::snprintf(name, sizeof name, "set_%04d.json", k);
                write_taskset(gen_out / name, {Platform{set.processors}, set.tasks});
                std::cout << (gen_out / name).string() << " U=" << set.actual_utilization.get_d()
                          << " target=" << set.target_utilization << '\n';
            }
            return 0;
        }
        if (*analyze) {
            return analyze_file(analyze_path, analyze_flags.build(), {}, std::cout, std::cerr);
        }
        if (*grid_cmd) {
            if (grid_paper) grid.sets_per_cell = 1000;
            grid.tests = select_tests(default_grid_tests(), grid_tests);
            print_summary(run_grid(grid, grid_out), grid_out);
            return 0;
        }
        if (*case_cmd) {
            if (case_paper) study.sets_per_cell = 1000;
            study.card = parse_card(case_card);
            study.tests = select_tests(default_case_study_tests(), case_tests);
            print_summary(run_case_study(study, case_out), case_out);
            return 0;
        }
        if (*sim_cmd) {
            const auto file = read_taskset(sim_path);
            const auto config = sim_flags.build();
            Time horizon = sim_horizon;
            if (horizon <= 0) {
                const auto h = hyperperiod(file.tasks);
                if (!h) throw Error(ErrorCode::HorizonOverflow, "hyperperiod too large; pass --horizon");
                horizon = *h;
            }
            const auto releases = sim_offsets.empty()
                                      ? ReleasePattern::synchronous(horizon)
                                      : ReleasePattern::explicit_offsets(parse_offsets(sim_offsets), horizon);
            SimTrace trace;
            if (sim_global) {
                SchedulerKind kind = config.scheduler;
                kind.scope = Scope::Gang;
                trace = simulate_global(file.platform.processors, kind, file.tasks, releases);
            } else {
                const auto result = run_partitioner(config, file.tasks, file.platform.processors, {});
                if (!result.plan) {
                    std::cerr << "no partition plan: the set is not accepted by "
                              << to_string(config.variant) << '\n';
                    return 1;
                }
                trace = simulate(*result.plan, file.tasks, releases);
            }
            if (sim_out.empty()) {
                write_trace(std::cout, trace);
            } else {
                std::ofstream out(sim_out);
                if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + sim_out.string());
                write_trace(out, trace);
            }
            if (trace.first_miss)
                std::cerr << "deadline miss: task " << trace.first_miss->task << " at tick "
                          << trace.first_miss->tick << '\n';
            return trace.no_miss() ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
