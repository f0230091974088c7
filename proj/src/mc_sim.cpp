#include "bellsim/mc_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bellsim/counter_rng.hpp"

namespace bellsim {

std::string to_string(Fallback f) { return f == Fallback::Lhv ? "lhv" : "uncorrelated"; }

std::string to_string(Departure d) { return d == Departure::MeasureStart ? "measure_start" : "measure_end"; }

std::array<ArmTiming, 2> arm_timings(const Scenario& scenario, Femtoseconds emission) {
    std::array<ArmTiming, 2> out{};
    for (std::size_t i = 0; i < 2; ++i) {
        const Arm& arm = scenario.arms[i];
        out[i].arrival = emission + light_delay(arm.path.length());
        out[i].measure_start = out[i].arrival + to_femtoseconds(arm.offset_s);
        out[i].measure_end = out[i].measure_start + to_femtoseconds(arm.tau_s);
    }
    return out;
}

namespace {

// Window available to the influence, in femtoseconds, measured from its departure.
Femtoseconds influence_window(const std::array<MeasurementWindow, 2>& w, Departure departure) {
    const std::size_t first = w[1].start < w[0].start ? 1 : 0;
    const std::size_t second = 1 - first;
    const Femtoseconds depart = departure == Departure::MeasureStart ? w[first].start : w[first].end;
    return w[second].end - depart;
}

double boundary_speed(double trace_length, Femtoseconds window) {
    if (window.count() <= 0) return kInfiniteSpeed;
    return trace_length / (PhysicalConstants::c * to_seconds(window));
}

}  // namespace

bool connected(const std::array<MeasurementWindow, 2>& windows, const std::array<double, 2>& lengths,
               double v_over_c, Departure departure) {
    if (!(lengths[0] > 0.0) || !(lengths[1] > 0.0)) throw std::invalid_argument("connected: lengths must be > 0");
    if (!(v_over_c > 0.0)) throw std::invalid_argument("connected: speed must be > 0");
    const Femtoseconds window = influence_window(windows, departure);
    if (std::isinf(v_over_c)) return window.count() >= 0;
    if (window.count() <= 0) return false;
    return v_over_c >= boundary_speed(lengths[0] + lengths[1], window);
}

double critical_speed(const Scenario& scenario, Departure departure) {
    const auto t = arm_timings(scenario);
    const Femtoseconds window = influence_window({t[0].window(), t[1].window()}, departure);
    return boundary_speed(arm_length(scenario, 0) + arm_length(scenario, 1), window);
}

CorrelationEstimate estimate_from_counts(const std::array<std::uint64_t, 4>& counts,
                                         const std::array<std::int64_t, 4>& product_sums) {
    CorrelationEstimate est;
    double variance = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        SettingEstimate& cell = est.per_setting[i];
        cell.n = counts[i];
        if (cell.n == 0) {
            variance = kInfiniteSpeed;
            continue;
        }
        cell.e_hat = static_cast<double>(product_sums[i]) / static_cast<double>(cell.n);
        est.s_hat += kChshSigns[i] * cell.e_hat;
        variance += (1.0 - cell.e_hat * cell.e_hat) / static_cast<double>(cell.n);
    }
    est.stderr_s = std::sqrt(variance);
    return est;
}

// ── pair sampling ───────────────────────────────────────────────────────────

namespace {

struct PreparedRun {
    std::array<ArmTiming, 2> base_timing{};
    bool connected = false;
    std::array<std::pair<AnalyzerAngle, AnalyzerAngle>, 4> pairs{};
    std::array<OutcomeDistribution, 4> quantum{};
    std::array<OutcomeDistribution, 4> lhv{};
    Fallback fallback = Fallback::Lhv;
};

PreparedRun prepare(const Scenario& scenario, const CollapseModel& model, const ChshSettings& settings) {
    validate(scenario);
    if (!(model.v_over_c > 0.0)) throw std::invalid_argument("collapse speed must be > 0");
    PreparedRun run;
    run.base_timing = arm_timings(scenario);
    // Geometry is a static snapshot: every pair sees the same relative timing.
    run.connected = connected({run.base_timing[0].window(), run.base_timing[1].window()},
                              {arm_length(scenario, 0), arm_length(scenario, 1)}, model.v_over_c, model.departure);
    run.pairs = settings.pairs();
    for (std::size_t i = 0; i < 4; ++i) {
        run.quantum[i] = outcome_distribution(CorrelationLaw::Quantum, run.pairs[i].first, run.pairs[i].second);
        run.lhv[i] = outcome_distribution(CorrelationLaw::Lhv, run.pairs[i].first, run.pairs[i].second);
    }
    run.fallback = model.fallback;
    return run;
}

std::array<int, 2> sample_joint(const OutcomeDistribution& p, double u) {
    if (u < p.p_pp) return {+1, +1};
    u -= p.p_pp;
    if (u < p.p_pm) return {+1, -1};
    u -= p.p_pm;
    if (u < p.p_mp) return {-1, +1};
    return {-1, -1};
}

struct PairDraw {
    int setting_index;
    std::array<int, 2> outcomes;
};

PairDraw draw_pair(const PreparedRun& run, std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index);
    const int setting = static_cast<int>(rng.next() >> 62);
    if (run.connected) return {setting, sample_joint(run.quantum[setting], rng.uniform())};
    if (run.fallback == Fallback::Lhv) return {setting, sample_joint(run.lhv[setting], rng.uniform())};
    const std::uint64_t bits = rng.next();
    return {setting, {(bits >> 63) ? +1 : -1, ((bits >> 62) & 1U) ? +1 : -1}};
}

PairRecord make_record(const PreparedRun& run, std::uint64_t seed, std::uint64_t index, Femtoseconds spacing) {
    PairRecord rec;
    rec.index = index;
    rec.emission = spacing * static_cast<std::int64_t>(index);
    for (std::size_t i = 0; i < 2; ++i) {
        rec.arms[i].arrival = run.base_timing[i].arrival + rec.emission;
        rec.arms[i].measure_start = run.base_timing[i].measure_start + rec.emission;
        rec.arms[i].measure_end = run.base_timing[i].measure_end + rec.emission;
    }
    rec.connected = run.connected;
    const PairDraw draw = draw_pair(run, seed, index);
    rec.setting_index = draw.setting_index;
    rec.settings = {run.pairs[draw.setting_index].first, run.pairs[draw.setting_index].second};
    rec.outcomes = draw.outcomes;
    return rec;
}

struct Tally {
    std::array<std::uint64_t, 4> counts{};
    std::array<std::int64_t, 4> products{};
    std::uint64_t connected = 0;
};

Tally tally_range(const PreparedRun& run, std::uint64_t seed, std::uint64_t begin, std::uint64_t end) {
    Tally t;
    for (std::uint64_t i = begin; i < end; ++i) {
        const PairDraw d = draw_pair(run, seed, i);
        ++t.counts[d.setting_index];
        t.products[d.setting_index] += d.outcomes[0] * d.outcomes[1];
    }
    if (run.connected) t.connected = end - begin;
    return t;
}

}  // namespace

PairRecord simulate_pair(const Scenario& scenario, const CollapseModel& model, const ChshSettings& settings,
                         std::uint64_t seed, std::uint64_t index, Femtoseconds pair_spacing) {
    return make_record(prepare(scenario, model, settings), seed, index, pair_spacing);
}

SimulationResult simulate(const Scenario& scenario, const CollapseModel& model, const ChshSettings& settings,
                          const SimulationOptions& options) {
    if (options.n_pairs < kMinPairs) {
        throw std::invalid_argument("simulate: n_pairs must be >= " + std::to_string(kMinPairs));
    }
    const PreparedRun run = prepare(scenario, model, settings);
    constexpr auto kMaxTicks = std::numeric_limits<std::int64_t>::max() / 2;
    if (options.pair_spacing.count() < 0 ||
        (options.pair_spacing.count() > 0 &&
         options.n_pairs > static_cast<std::uint64_t>(kMaxTicks / options.pair_spacing.count()))) {
        throw std::invalid_argument("simulate: emission timestamps overflow 64-bit femtoseconds");
    }

    const std::uint64_t workers = std::clamp<std::uint64_t>(options.workers, 1, options.n_pairs);
    std::vector<Tally> partial(workers);
    const std::uint64_t chunk = (options.n_pairs + workers - 1) / workers;
    auto run_chunk = [&](std::uint64_t w) {
        const std::uint64_t begin = std::min(options.n_pairs, w * chunk);
        const std::uint64_t end = std::min(options.n_pairs, begin + chunk);
        partial[w] = tally_range(run, options.seed, begin, end);
    };
    if (workers == 1) {
        run_chunk(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(run_chunk, w);
    }

    Tally total;
    for (const Tally& t : partial) {
        for (std::size_t i = 0; i < 4; ++i) {
            total.counts[i] += t.counts[i];
            total.products[i] += t.products[i];
        }
        total.connected += t.connected;
    }

    SimulationResult result;
    result.estimate = estimate_from_counts(total.counts, total.products);
    result.n_connected = total.connected;
    result.fraction_connected = static_cast<double>(total.connected) / static_cast<double>(options.n_pairs);
    const std::uint64_t traced = std::min<std::uint64_t>(options.trace_cap, options.n_pairs);
    result.trace.reserve(traced);
    for (std::uint64_t i = 0; i < traced; ++i) {
        result.trace.push_back(make_record(run, options.seed, i, options.pair_spacing));
    }
    return result;
}

// ── sweeps ──────────────────────────────────────────────────────────────────

std::vector<double> speed_grid(double v_min, double v_max, std::size_t points, bool log_spaced) {
    if (points == 0) throw std::invalid_argument("speed grid needs at least one point");
    if (!(v_min > 0.0)) throw std::invalid_argument("speed grid minimum must be > 0");
    if (points == 1) return {v_min};
    if (!std::isfinite(v_max) || !(v_max > v_min)) {
        throw std::invalid_argument("speed grid maximum must be finite and above the minimum");
    }
    std::vector<double> grid(points);
    const double steps = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / steps;
        grid[i] = log_spaced ? v_min * std::pow(v_max / v_min, f) : v_min + (v_max - v_min) * f;
    }
    grid.front() = v_min;
    grid.back() = v_max;
    return grid;
}

std::uint64_t sweep_point_seed(std::uint64_t seed, std::size_t i) {
    return mix64(seed ^ mix64(0xA5A5A5A5A5A5A5A5ULL + i));
}

std::vector<SweepPoint> sweep_speed(const Scenario& scenario, Fallback fallback, const ChshSettings& settings,
                                    const std::vector<double>& v_grid, std::uint64_t n_pairs_per_point,
                                    std::uint64_t seed, unsigned workers, Departure departure) {
    if (v_grid.empty()) throw std::invalid_argument("sweep_speed: empty speed grid");
    if (!std::is_sorted(v_grid.begin(), v_grid.end())) {
        throw std::invalid_argument("sweep_speed: speed grid must be ascending");
    }
    std::vector<SweepPoint> curve;
    curve.reserve(v_grid.size());
    for (std::size_t i = 0; i < v_grid.size(); ++i) {
        const CollapseModel model{v_grid[i], fallback, departure};
        SimulationOptions opts;
        opts.n_pairs = n_pairs_per_point;
        opts.seed = sweep_point_seed(seed, i);
        opts.workers = workers;
        const SimulationResult r = simulate(scenario, model, settings, opts);
        curve.push_back({v_grid[i], r.estimate.s_hat, r.estimate.stderr_s, n_pairs_per_point, r.fraction_connected});
    }
    return curve;
}

std::optional<TransitionBracket> find_transition(const std::vector<SweepPoint>& curve) {
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        if (curve[i].fraction_connected < 0.5 && curve[i + 1].fraction_connected >= 0.5) {
            return TransitionBracket{i, curve[i].v_over_c, curve[i + 1].v_over_c};
        }
    }
    return std::nullopt;
}

std::string sweep_csv(const std::vector<SweepPoint>& curve) {
    std::ostringstream out;
    out << "v_over_c,S_hat,stderr_S,n_pairs,fraction_connected\n";
    for (const SweepPoint& p : curve) {
        out << format_number(p.v_over_c) << ',' << format_number(p.s_hat) << ',' << format_number(p.stderr_s) << ','
            << p.n_pairs << ',' << format_number(p.fraction_connected) << '\n';
    }
    return out.str();
}

std::string trace_csv(const std::vector<PairRecord>& records) {
    std::ostringstream out;
    out << "index,emission_s,arrival0_s,measure_start0_s,measure_end0_s,arrival1_s,measure_start1_s,"
           "measure_end1_s,connected,setting0_rad,setting1_rad,outcome0,outcome1\n";
    for (const PairRecord& r : records) {
        out << r.index << ',' << format_number(to_seconds(r.emission));
        for (const ArmTiming& t : r.arms) {
            out << ',' << format_number(to_seconds(t.arrival)) << ',' << format_number(to_seconds(t.measure_start))
                << ',' << format_number(to_seconds(t.measure_end));
        }
        out << ',' << (r.connected ? 1 : 0) << ',' << format_number(r.settings[0].radians()) << ','
            << format_number(r.settings[1].radians()) << ',' << r.outcomes[0] << ',' << r.outcomes[1] << '\n';
    }
    return out.str();
}

}  // namespace bellsim
