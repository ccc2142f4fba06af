#include <gangsched/generator.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

namespace gangsched {

std::string to_string(VolumeLevel level) {
    switch (level) {
    case VolumeLevel::Low: return "low";
    case VolumeLevel::Medium: return "medium";
    case VolumeLevel::High: return "high";
    }
    return "?";
}

VolumeLevel parse_volume_level(std::string_view text) {
    if (text == "low") return VolumeLevel::Low;
    if (text == "medium") return VolumeLevel::Medium;
    if (text == "high") return VolumeLevel::High;
    throw Error(ErrorCode::InvalidConfig, "unknown volume level '" + std::string(text) + "'");
}

std::pair<int, int> volume_range(VolumeLevel level, int processors) {
    // ceil(0.3 M) and ceil(0.6 M) in integer arithmetic.
    switch (level) {
    case VolumeLevel::Low: return {1, std::max(1, (3 * processors + 9) / 10)};
    case VolumeLevel::Medium: return {1, std::max(1, (6 * processors + 9) / 10)};
    case VolumeLevel::High: return {1, std::max(1, processors - 1)};
    }
    return {1, 1};
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coordinates) {
    // splitmix64 finalizer over the running state.
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t state = mix(base);
    for (auto c : coordinates) state = mix(state ^ mix(c));
    return state;
}

std::vector<double> gen_utilizations(int n, double total, std::span<const double> caps,
                                     std::uint64_t seed) {
    if (n < 1 || static_cast<std::size_t>(n) != caps.size())
        throw Error(ErrorCode::InvalidConfig, "need one cap per task");
    if (!(total > 0)) throw Error(ErrorCode::InvalidConfig, "target utilization must be positive");
    for (double c : caps)
        if (!(c > 0)) throw Error(ErrorCode::InvalidConfig, "caps must be positive");
    const double cap_sum = std::accumulate(caps.begin(), caps.end(), 0.0);
    if (cap_sum < total)
        throw Error(ErrorCode::InfeasibleTarget, "caps sum to " + std::to_string(cap_sum) +
                                                     " < target " + std::to_string(total));

    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> exponential(1.0);

    // Uniform point on the simplex scaled to the target.
    std::vector<double> values(static_cast<std::size_t>(n));
    double sum = 0;
    for (auto& v : values) {
        v = exponential(rng) + 1e-12;
        sum += v;
    }
    for (auto& v : values) v = v / sum * total;

    // Clip and redistribute the excess over tasks that still have headroom,
    // proportionally to that headroom so nobody is pushed past its cap.
    for (int round = 0; round < 4 * n + 8; ++round) {
        double excess = 0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] > caps[i]) {
                excess += values[i] - caps[i];
                values[i] = caps[i];
            }
        }
        if (excess <= 0) break;
        double headroom = 0;
        for (std::size_t i = 0; i < values.size(); ++i) headroom += caps[i] - values[i];
        if (headroom <= 0) break;
        const double share = std::min(1.0, excess / headroom);
        for (std::size_t i = 0; i < values.size(); ++i) values[i] += (caps[i] - values[i]) * share;
    }
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = std::min(values[i], caps[i]);
    return values;
}

int minimum_volume(double utilization) {
    return std::max(1, static_cast<int>(std::ceil(utilization - 1e-12)));
}

Time wcet_for(double utilization, Time period, int volume) {
    return static_cast<Time>(std::floor(utilization * double(period) / double(volume)));
}

Time edge_tpu_period(Time wcet, int volume, double utilization) {
    return static_cast<Time>(std::ceil(double(wcet * volume) / utilization - 1e-9));
}

namespace {

Rational realized_utilization(const TaskSet& tasks) { return tasks.total_utilization(); }

}  // namespace

GeneratedSet gen_taskset(const GenSpec& spec) {
    if (spec.processors < 1 || spec.tasks < 1)
        throw Error(ErrorCode::InvalidConfig, "need at least one processor and one task");
    if (!(spec.normalized_utilization > 0) || spec.normalized_utilization > 1)
        throw Error(ErrorCode::InvalidConfig, "normalized utilization must lie in (0, 1]");
    if (spec.period_min < 1 || spec.period_max < spec.period_min)
        throw Error(ErrorCode::InvalidConfig, "bad period range");

    const auto [volume_lo, volume_hi] = volume_range(spec.level, spec.processors);
    const double target = spec.normalized_utilization * spec.processors;
    const std::vector<double> caps(static_cast<std::size_t>(spec.tasks), double(volume_hi));

    std::mt19937_64 rng(derive_seed(spec.seed, {0x7a5c}));
    std::uniform_int_distribution<Time> period_dist(spec.period_min, spec.period_max);

    constexpr int kPeriodDraws = 100;
    constexpr int kUtilizationDraws = 100;
    for (int attempt = 0; attempt < kUtilizationDraws; ++attempt) {
        const auto utils =
            gen_utilizations(spec.tasks, target, caps, derive_seed(spec.seed, {0x1u, std::uint64_t(attempt)}));
        std::vector<GangTask> tasks;
        bool exhausted = false;
        for (int i = 0; i < spec.tasks && !exhausted; ++i) {
            const double u = utils[static_cast<std::size_t>(i)];
            const int min_volume = std::clamp(minimum_volume(u), volume_lo, volume_hi);
            std::uniform_int_distribution<int> volume_dist(min_volume, volume_hi);
            // A zero WCET redraws the period together with the volume: a tiny
            // U_i on a wide gang may need the narrowest volume to reach C = 1.
            Time wcet = 0;
            Time period = 0;
            int volume = 0;
            for (int draw = 0; draw < kPeriodDraws && wcet == 0; ++draw) {
                period = period_dist(rng);
                volume = volume_dist(rng);
                wcet = wcet_for(u, period, volume);
            }
            if (wcet == 0) {
                exhausted = true;
                break;
            }
            tasks.push_back(validate_task(i, wcet, period, period, volume));
        }
        if (exhausted) continue;
        GeneratedSet out;
        out.tasks = TaskSet(std::move(tasks));
        out.processors = spec.processors;
        out.target_utilization = target;
        out.actual_utilization = realized_utilization(out.tasks);
        return out;
    }
    throw Error(ErrorCode::GenerationExhausted, "every draw produced a zero WCET");
}

std::string to_string(EdgeTpuCard card) { return card == EdgeTpuCard::Tpu8 ? "8tpu" : "16tpu"; }

EdgeTpuCard parse_card(std::string_view text) {
    if (text == "8" || text == "8tpu") return EdgeTpuCard::Tpu8;
    if (text == "16" || text == "16tpu") return EdgeTpuCard::Tpu16;
    throw Error(ErrorCode::InvalidConfig, "unknown card '" + std::string(text) + "'");
}

int card_processors(EdgeTpuCard card) { return card == EdgeTpuCard::Tpu8 ? 8 : 16; }

std::span<const EdgeTpuModel> edge_tpu_models() {
    static constexpr std::array<EdgeTpuModel, 7> kModels{{
        {"Inc-1", 5.72, 1, 6},
        {"Inc-2", 10.19, 2, 10},
        {"Inc-3", 21.56, 4, 15},
        {"Inc-4", 40.90, 6, 31},
        {"Res-1", 23.40, 4, 24},
        {"Res-2", 42.46, 7, 44},
        {"Res-3", 57.53, 9, 55},
    }};
    return kModels;
}

GeneratedSet edge_tpu_suite(EdgeTpuCard card, double normalized_utilization, std::uint64_t seed) {
    if (!(normalized_utilization > 0) || normalized_utilization > 1)
        throw Error(ErrorCode::InvalidConfig, "normalized utilization must lie in (0, 1]");
    const int processors = card_processors(card);
    const auto models = edge_tpu_models().first(card == EdgeTpuCard::Tpu8 ? 6 : 7);

    std::vector<double> caps;
    for (const auto& m : models) caps.push_back(double(m.volume));
    const double target = normalized_utilization * processors;
    const auto utils = gen_utilizations(static_cast<int>(models.size()), target, caps, seed);

    std::vector<GangTask> tasks;
    for (std::size_t i = 0; i < models.size(); ++i) {
        const auto& m = models[i];
        // Rounding the period up keeps the realized utilization at or below
        // the drawn value.
        const Time period = edge_tpu_period(m.woet_ms, m.volume, utils[i]);
        tasks.push_back(validate_task(static_cast<TaskId>(i), m.woet_ms, period, period, m.volume));
    }
    GeneratedSet out;
    out.tasks = TaskSet(std::move(tasks));
    out.processors = processors;
    out.target_utilization = target;
    out.actual_utilization = realized_utilization(out.tasks);
    return out;
}

}  // namespace gangsched
