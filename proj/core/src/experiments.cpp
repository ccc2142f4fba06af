#include <gangsched/experiments.hpp>

#include <gangsched/bounds.hpp>
#include <gangsched/simulator.hpp>
#include <gangsched/taskset_io.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <mutex>
#include <thread>
#include <tuple>

namespace gangsched {

namespace {

constexpr SchedulerKind kFpP{Policy::FixedPriority, Preemption::Preemptive, Scope::Uniprocessor};
constexpr SchedulerKind kEdfP{Policy::Edf, Preemption::Preemptive, Scope::Uniprocessor};
constexpr SchedulerKind kFpNp{Policy::FixedPriority, Preemption::NonPreemptive, Scope::Uniprocessor};

PartitionerConfig make_config(Variant variant, SchedulerKind kind) {
    PartitionerConfig config;
    config.variant = variant;
    config.scheduler = kind;
    if (variant == Variant::SpG) config.scheduler.scope = Scope::Gang;
    return config;
}

std::string format_util(double u) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", u);
    return buf;
}

std::string format_ratio(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", r);
    return buf;
}

struct CellCounts {
    std::vector<long> accepted;
    long total = 0;
    long spot_checks = 0;
    long spot_check_misses = 0;
};

// Re-simulates an accepted plan under synchronous release.
bool spot_check(const PartitionPlan& plan, const TaskSet& tasks) {
    Time horizon = 2 * tasks.max_period();
    for (const auto& t : tasks) horizon = std::max(horizon, t.deadline());
    if (auto h = hyperperiod(tasks, horizon)) horizon = *h;
    SimOptions options;
    options.stop_at_first_miss = true;
    return simulate(plan, tasks, ReleasePattern::synchronous(horizon), options).no_miss();
}

CellCounts evaluate_sets(const std::vector<GeneratedSet>& sets, const std::vector<NamedTest>& tests,
                         const GangTestRegistry& registry, std::uint64_t seed) {
    CellCounts counts;
    counts.accepted.assign(tests.size(), 0);
    counts.total = static_cast<long>(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) {
        for (std::size_t k = 0; k < tests.size(); ++k) {
            const auto result = run_partitioner(tests[k].config, sets[s].tasks, sets[s].processors,
                                                registry);
            if (!result.accepted) continue;
            ++counts.accepted[k];
            // Roughly 1% of accepted plans are replayed in the simulator.
            if (result.plan && derive_seed(seed, {s, k}) % 100 == 0) {
                ++counts.spot_checks;
                if (!spot_check(*result.plan, sets[s].tasks)) ++counts.spot_check_misses;
            }
        }
    }
    return counts;
}

template <typename Job>
void parallel_for(std::size_t count, unsigned threads, Job job) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        while (true) {
            const auto i = next.fetch_add(1);
            if (i >= count) return;
            try {
                job(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

std::vector<RatioRow> average_rows(const std::vector<RatioRow>& rows) {
    using Key = std::tuple<std::string, std::string, double, std::string>;
    std::map<Key, std::size_t> index;
    std::vector<RatioRow> out;
    for (const auto& r : rows) {
        Key key{r.scenario, r.volume_level, r.norm_util, r.test};
        auto [it, inserted] = index.emplace(key, out.size());
        if (inserted) {
            RatioRow avg = r;
            avg.processors = "avg";
            avg.tasks = "avg";
            avg.schedulable = 0;
            avg.total = 0;
            out.push_back(avg);
        }
        out[it->second].schedulable += r.schedulable;
        out[it->second].total += r.total;
    }
    std::stable_sort(out.begin(), out.end(), [](const RatioRow& a, const RatioRow& b) {
        return std::tie(a.scenario, a.volume_level) < std::tie(b.scenario, b.volume_level);
    });
    return out;
}

void write_csv(const std::filesystem::path& path, const std::vector<RatioRow>& rows) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
    write_rows(out, rows);
    if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

void persist(const ExperimentResult& result, const std::filesystem::path& out_path) {
    if (out_path.empty()) return;
    write_csv(out_path, result.rows);
    write_csv(averaged_path(out_path), result.averaged);
}

}  // namespace

std::vector<NamedTest> default_grid_tests() {
    return {
        {"SP-U-FP", "preemptive", make_config(Variant::SpU, kFpP)},
        {"SP-U-EDF", "preemptive", make_config(Variant::SpU, kEdfP)},
        {"SP-G-FP", "preemptive", make_config(Variant::SpG, kFpP)},
        {"SP-G-EDF", "preemptive", make_config(Variant::SpG, kEdfP)},
        {"SP-B-EDF", "preemptive", make_config(Variant::SpB, kEdfP)},
        {"SP-U-FP-NP", "nonpreemptive", make_config(Variant::SpU, kFpNp)},
        {"SP-G-FP-NP", "nonpreemptive", make_config(Variant::SpG, kFpNp)},
    };
}

std::vector<NamedTest> default_case_study_tests() {
    return {
        {"SP-U-FP-NP", "casestudy", make_config(Variant::SpU, kFpNp)},
        {"SP-G-FP-NP", "casestudy", make_config(Variant::SpG, kFpNp)},
    };
}

std::vector<NamedTest> select_tests(std::vector<NamedTest> tests, const std::string& names) {
    if (names.empty()) return tests;
    std::vector<NamedTest> out;
    std::stringstream list(names);
    std::string name;
    while (std::getline(list, name, ',')) {
        if (name.empty()) continue;
        auto it = std::find_if(tests.begin(), tests.end(),
                               [&](const NamedTest& t) { return t.name == name; });
        if (it == tests.end()) throw Error(ErrorCode::InvalidConfig, "unknown test '" + name + "'");
        out.push_back(*it);
    }
    return out;
}

void validate_grid(const ExperimentGrid& grid) {
    if (grid.sets_per_cell < 1) throw Error(ErrorCode::InvalidConfig, "sets_per_cell must be >= 1");
    for (double u : grid.utilizations)
        if (!(u > 0) || u > 1)
            throw Error(ErrorCode::InvalidConfig, "utilization " + format_util(u) + " outside (0, 1]");
    for (int m : grid.processors)
        if (m < 2) throw Error(ErrorCode::InvalidConfig, "grid platforms need M >= 2");
    for (int f : grid.task_factors)
        if (f < 1) throw Error(ErrorCode::InvalidConfig, "task factor must be >= 1");
    if (grid.tests.empty()) throw Error(ErrorCode::InvalidConfig, "no tests selected");
    for (const auto& t : grid.tests) validate_config(t.config);
}

void write_rows(std::ostream& out, const std::vector<RatioRow>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows)
        out << r.scenario << ',' << r.processors << ',' << r.tasks << ',' << r.volume_level << ','
            << format_util(r.norm_util) << ',' << r.test << ',' << r.schedulable << ',' << r.total
            << ',' << format_ratio(r.ratio()) << '\n';
}

std::filesystem::path averaged_path(const std::filesystem::path& path) {
    auto out = path;
    out.replace_filename(path.stem().string() + ".avg.csv");
    return out;
}

ExperimentResult run_grid(const ExperimentGrid& grid, const std::filesystem::path& out_path,
                          const GangTestRegistry& registry) {
    validate_grid(grid);

    struct Cell {
        int processors;
        int tasks;
        VolumeLevel level;
        std::size_t util_index;
    };
    std::vector<Cell> cells;
    for (int m : grid.processors)
        for (int f : grid.task_factors)
            for (auto level : grid.levels)
                for (std::size_t u = 0; u < grid.utilizations.size(); ++u)
                    cells.push_back({m, f * m, level, u});

    std::vector<CellCounts> counts(cells.size());
    parallel_for(cells.size(), grid.threads, [&](std::size_t c) {
        const auto& cell = cells[c];
        const std::uint64_t cell_seed =
            derive_seed(grid.seed, {std::uint64_t(cell.processors), std::uint64_t(cell.tasks),
                                    std::uint64_t(cell.level), cell.util_index});
        std::vector<GeneratedSet> sets;
        sets.reserve(static_cast<std::size_t>(grid.sets_per_cell));
        for (int s = 0; s < grid.sets_per_cell; ++s) {
            GenSpec spec;
            spec.processors = cell.processors;
            spec.tasks = cell.tasks;
            spec.level = cell.level;
            spec.normalized_utilization = grid.utilizations[cell.util_index];
            spec.seed = derive_seed(cell_seed, {std::uint64_t(s)});
            sets.push_back(gen_taskset(spec));
        }
        counts[c] = evaluate_sets(sets, grid.tests, registry, cell_seed);
    });

    ExperimentResult result;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto& cell = cells[c];
        for (std::size_t k = 0; k < grid.tests.size(); ++k) {
            result.rows.push_back({grid.tests[k].scenario, std::to_string(cell.processors),
                                   std::to_string(cell.tasks), to_string(cell.level),
                                   grid.utilizations[cell.util_index], grid.tests[k].name,
                                   counts[c].accepted[k], counts[c].total});
        }
        result.spot_checks += counts[c].spot_checks;
        result.spot_check_misses += counts[c].spot_check_misses;
    }
    result.averaged = average_rows(result.rows);
    persist(result, out_path);
    return result;
}

ExperimentResult run_case_study(const CaseStudyConfig& config,
                                const std::filesystem::path& out_path,
                                const GangTestRegistry& registry) {
    ExperimentGrid shape;
    shape.utilizations = config.utilizations;
    shape.sets_per_cell = config.sets_per_cell;
    shape.tests = config.tests;
    validate_grid(shape);

    const int processors = card_processors(config.card);
    const int tasks = config.card == EdgeTpuCard::Tpu8 ? 6 : 7;
    std::vector<CellCounts> counts(config.utilizations.size());
    parallel_for(config.utilizations.size(), config.threads, [&](std::size_t u) {
        const std::uint64_t cell_seed =
            derive_seed(config.seed, {std::uint64_t(processors), std::uint64_t(u)});
        std::vector<GeneratedSet> sets;
        for (int s = 0; s < config.sets_per_cell; ++s)
            sets.push_back(edge_tpu_suite(config.card, config.utilizations[u],
                                          derive_seed(cell_seed, {std::uint64_t(s)})));
        counts[u] = evaluate_sets(sets, config.tests, registry, cell_seed);
    });

    ExperimentResult result;
    for (std::size_t u = 0; u < config.utilizations.size(); ++u) {
        for (std::size_t k = 0; k < config.tests.size(); ++k) {
            result.rows.push_back({config.tests[k].scenario, std::to_string(processors),
                                   std::to_string(tasks), to_string(config.card),
                                   config.utilizations[u], config.tests[k].name,
                                   counts[u].accepted[k], counts[u].total});
        }
        result.spot_checks += counts[u].spot_checks;
        result.spot_check_misses += counts[u].spot_check_misses;
    }
    result.averaged = average_rows(result.rows);
    persist(result, out_path);
    return result;
}

namespace {

void print_responses(std::ostream& out, const PartitionPlan& plan, const TaskSet& tasks,
                     const PartitionerConfig& config, const GangTestRegistry& registry) {
    if (config.scheduler.policy == Policy::Edf) return;
    for (const auto& partition : plan.partitions) {
        const auto members = partition_tasks(partition, tasks);
        const auto order = dm_priority_order(members);
        SchedVerdict verdict;
        const bool serialized = config.variant == Variant::SpU ||
                                pairwise_sequential(members, partition.volume);
        if (serialized) {
            verdict = config.scheduler.preemptive() ? rta_fp_preemptive(members, order)
                                                    : rta_fp_nonpreemptive(members, order);
        } else if (config.scheduler.preemptive() && config.gang_test.empty() &&
                   !registry.find_for(partition.scheduler)) {
            verdict = baseline_gang_rta_fp(members, partition.volume, order);
        } else {
            continue;
        }
        for (const auto& [id, response] : verdict.responses)
            out << "  task " << id << ": partition " << partition.id << ", response " << response
                << ", deadline " << tasks.by_id(id).deadline() << '\n';
    }
}

}  // namespace

int analyze_file(const std::filesystem::path& taskset_path, const PartitionerConfig& config,
                 const GangTestRegistry& registry, std::ostream& out, std::ostream& err) {
    TaskSetFile file;
    try {
        file = read_taskset(taskset_path);
        validate_config(config);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    const auto result = run_partitioner(config, file.tasks, file.platform.processors, registry);
    out << "variant: " << to_string(config.variant) << " (" << to_string(config.scheduler) << ")\n";
    out << "processors: " << file.platform.processors << ", tasks: " << file.tasks.size() << '\n';
    if (config.variant == Variant::SpB) {
        const auto report = sp_b(file.tasks, file.platform.processors, config.utilization_bound);
        out << "thm1: " << (report.thm1.holds ? "holds" : "fails") << " (" << report.thm1.lhs.get_d()
            << " <= " << report.thm1.rhs.get_d() << ", " << report.thm1.reason << ")\n";
        out << "thm2: " << (report.thm2.holds ? "holds" : "fails") << " (" << report.thm2.lhs.get_d()
            << " <= " << report.thm2.rhs.get_d() << ", " << report.thm2.reason << ")\n";
        out << "thm3: " << (report.thm3.holds ? "holds" : "fails") << " (" << report.thm3.reason;
        if (report.thm3.p) out << ", p = " << *report.thm3.p;
        out << ")\n";
    }
    if (result.accepted) {
        out << "result: schedulable\n";
        if (result.plan) {
            out << "plan: " << format_plan(*result.plan);
            out << "responses:\n";
            print_responses(out, *result.plan, file.tasks, config, registry);
        }
        return 0;
    }
    out << "result: unschedulable";
    if (result.failed_task) out << " (task " << *result.failed_task << " could not be placed)";
    out << '\n';
    return 1;
}

}  // namespace gangsched
