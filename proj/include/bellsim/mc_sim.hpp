#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bellsim/bell_core.hpp"
#include "bellsim/format.hpp"
#include "bellsim/scenario.hpp"
#include "bellsim/timing.hpp"

namespace bellsim {

/// Statistics used for pairs whose measurements the collapse influence cannot link.
enum class Fallback { Uncorrelated, Lhv };

/// Moment the collapse influence leaves the first-measured arm.
enum class Departure { MeasureStart, MeasureEnd };

std::string to_string(Fallback f);
std::string to_string(Departure d);

inline constexpr double kInfiniteSpeed = std::numeric_limits<double>::infinity();

struct CollapseModel {
    double v_over_c = kInfiniteSpeed;
    Fallback fallback = Fallback::Lhv;
    Departure departure = Departure::MeasureStart;
};

struct MeasurementWindow {
    Femtoseconds start{};
    Femtoseconds end{};
};

struct ArmTiming {
    Femtoseconds arrival{};
    Femtoseconds measure_start{};
    Femtoseconds measure_end{};

    MeasurementWindow window() const { return {measure_start, measure_end}; }
};

/// Per-arm timing for a pair emitted at `emission`.
std::array<ArmTiming, 2> arm_timings(const Scenario& scenario, Femtoseconds emission = Femtoseconds{0});

/// True iff an influence leaving the earlier-starting arm (arm 0 on ties) and
/// travelling the trace path L_0 + L_1 at v_over_c * c reaches the other arm
/// before its measurement ends. Throws std::invalid_argument for non-positive
/// lengths or speed.
bool connected(const std::array<MeasurementWindow, 2>& windows, const std::array<double, 2>& lengths,
               double v_over_c, Departure departure = Departure::MeasureStart);

/// Exact connect/disconnect boundary of `connected` for this scenario's timing;
/// +inf when no finite speed links the measurements.
double critical_speed(const Scenario& scenario, Departure departure = Departure::MeasureStart);

struct PairRecord {
    std::uint64_t index = 0;
    Femtoseconds emission{};
    std::array<ArmTiming, 2> arms{};
    bool connected = false;
    int setting_index = 0;  // position in ChshSettings::pairs()
    std::array<AnalyzerAngle, 2> settings{};
    std::array<int, 2> outcomes{};
};

struct SettingEstimate {
    double e_hat = 0.0;
    std::uint64_t n = 0;
};

struct CorrelationEstimate {
    std::array<SettingEstimate, 4> per_setting{};
    double s_hat = 0.0;
    /// sqrt(sum (1 - E^2)/n); infinite while any setting has no pairs.
    double stderr_s = 0.0;
};

/// Builds the estimate from integer tallies: pair counts and summed outcome products.
CorrelationEstimate estimate_from_counts(const std::array<std::uint64_t, 4>& counts,
                                         const std::array<std::int64_t, 4>& product_sums);

struct SimulationOptions {
    std::uint64_t n_pairs = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::size_t trace_cap = 0;
    Femtoseconds pair_spacing = Femtoseconds{1'000'000'000};  // 1 us between emissions
};

struct SimulationResult {
    CorrelationEstimate estimate;
    std::uint64_t n_connected = 0;
    double fraction_connected = 0.0;
    std::vector<PairRecord> trace;  // first trace_cap pairs
};

/// Smallest accepted n_pairs.
inline constexpr std::uint64_t kMinPairs = 4;

/// One pair, a pure function of (scenario, model, settings, seed, index).
PairRecord simulate_pair(const Scenario& scenario, const CollapseModel& model, const ChshSettings& settings,
                         std::uint64_t seed, std::uint64_t index,
                         Femtoseconds pair_spacing = SimulationOptions{}.pair_spacing);

/// Output is bit-identical for any worker count.
SimulationResult simulate(const Scenario& scenario, const CollapseModel& model, const ChshSettings& settings,
                          const SimulationOptions& options);

struct SweepPoint {
    double v_over_c = 0.0;
    double s_hat = 0.0;
    double stderr_s = 0.0;
    std::uint64_t n_pairs = 0;
    double fraction_connected = 0.0;
};

/// Ascending grid: log-spaced or linear from v_min to v_max inclusive.
std::vector<double> speed_grid(double v_min, double v_max, std::size_t points, bool log_spaced);

/// Seed for grid point `i` of a sweep seeded with `seed`.
std::uint64_t sweep_point_seed(std::uint64_t seed, std::size_t i);

std::vector<SweepPoint> sweep_speed(const Scenario& scenario, Fallback fallback, const ChshSettings& settings,
                                    const std::vector<double>& v_grid, std::uint64_t n_pairs_per_point,
                                    std::uint64_t seed, unsigned workers = 1,
                                    Departure departure = Departure::MeasureStart);

/// Adjacent grid points where the connected fraction first crosses one half.
struct TransitionBracket {
    std::size_t lower_index = 0;
    double v_lower = 0.0;
    double v_upper = 0.0;
};

std::optional<TransitionBracket> find_transition(const std::vector<SweepPoint>& curve);

/// CSV columns: v_over_c,S_hat,stderr_S,n_pairs,fraction_connected.
std::string sweep_csv(const std::vector<SweepPoint>& curve);

/// Per-pair dump with times in seconds, same conventions as the scenario file.
std::string trace_csv(const std::vector<PairRecord>& records);

}  // namespace bellsim
