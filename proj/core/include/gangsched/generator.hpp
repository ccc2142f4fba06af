#pragma once

#include <gangsched/task.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gangsched {

enum class VolumeLevel { Low, Medium, High };

std::string to_string(VolumeLevel level);
/// Accepts "low", "medium", "high". Throws InvalidConfig otherwise.
VolumeLevel parse_volume_level(std::string_view text);

/// Inclusive volume range for a level on M processors:
/// low [1, ceil(0.3M)], medium [1, ceil(0.6M)], high [1, M-1].
std::pair<int, int> volume_range(VolumeLevel level, int processors);

struct GenSpec {
    int processors = 8;
    int tasks = 8;
    VolumeLevel level = VolumeLevel::Low;
    /// Target U / M, in (0, 1].
    double normalized_utilization = 0.5;
    std::uint64_t seed = 1;
    Time period_min = 10;
    Time period_max = 1000;
};

struct GeneratedSet {
    TaskSet tasks;
    int processors = 0;
    double target_utilization = 0.0;
    /// Sum of m C / T of the integer tasks; never above the target.
    Rational actual_utilization;
};

/// Mixes a base seed with coordinates into an independent stream seed.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coordinates);

/// n positive utilizations, each at most its cap, summing to `total` (within
/// 1e-9 relative). Samples uniformly on the simplex, then clips values over
/// their caps and hands the excess to the tasks with headroom until every
/// cap holds. Throws InfeasibleTarget when sum(caps) < total.
std::vector<double> gen_utilizations(int n, double total, std::span<const double> caps,
                                     std::uint64_t seed);

/// max(1, ceil(U)): the narrowest gang that keeps u = U/m <= 1.
int minimum_volume(double utilization);
/// floor(U T / m).
Time wcet_for(double utilization, Time period, int volume);

/// Synthetic gang task set: utilizations capped by the level's volume bound,
/// periods uniform in [period_min, period_max], volumes uniform in
/// [max(1, ceil(U_i)), bound], C = floor(U_i T / m), implicit deadlines.
/// Tasks landing on C = 0 redraw their period (up to 100 times) and then the
/// whole utilization vector; throws GenerationExhausted when that keeps
/// failing.
GeneratedSet gen_taskset(const GenSpec& spec);

enum class EdgeTpuCard { Tpu8, Tpu16 };

std::string to_string(EdgeTpuCard card);
EdgeTpuCard parse_card(std::string_view text);
int card_processors(EdgeTpuCard card);

struct EdgeTpuModel {
    const char* name;
    double size_mb;
    int volume;
    Time woet_ms;
};

/// Benchmarked DNN models: Inc-1..4, Res-1..3.
std::span<const EdgeTpuModel> edge_tpu_models();

/// The case-study suite for a card: the first six models on the 8-TPU card,
/// all seven on the 16-TPU card. C and m come from the benchmark table,
/// utilizations are drawn against normalized_utilization * M with caps m_i,
/// and T = ceil(C m / U_i), D = T.
/// ceil(C m / U).
Time edge_tpu_period(Time wcet, int volume, double utilization);

GeneratedSet edge_tpu_suite(EdgeTpuCard card, double normalized_utilization,
                            std::uint64_t seed);

}  // namespace gangsched
