#include "bellsim/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bellsim/bell_core.hpp"
#include "bellsim/collapse_bounds.hpp"
#include "bellsim/discrepancy.hpp"
#include "bellsim/errors.hpp"
#include "bellsim/link_budget.hpp"
#include "bellsim/mc_sim.hpp"
#include "bellsim/report.hpp"
#include "bellsim/scenario.hpp"
#include "bellsim/units.hpp"

namespace bellsim {

using json = nlohmann::json;

namespace {

// ── shared option plumbing ──────────────────────────────────────────────────

struct CommonOptions {
    std::string format = "json";
    std::string ledger_path;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--format", opts.format, "Report format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--ledger", opts.ledger_path, "Also write the published-claims ledger as CSV to this path");
}

unsigned default_workers() {
    if (const char* env = std::getenv("BELLSIM_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return 1;
}

struct ScenarioRef {
    std::string ref;
    std::string earth_moon_distance = "384400km";
};

void add_scenario(CLI::App* cmd, ScenarioRef& s) {
    cmd->add_option("scenario", s.ref, "Preset name or scenario JSON file")->required();
    cmd->add_option("--earth-moon-distance", s.earth_moon_distance, "Earth-Moon distance used by presets");
}

struct ResolvedScenario {
    Scenario scenario;
    json echo;
};

ResolvedScenario resolve(const ScenarioRef& s) {
    PresetOptions opts;
    opts.earth_moon_distance = parse_length(s.earth_moon_distance, "--earth-moon-distance");
    if (!(opts.earth_moon_distance > 0.0)) {
        throw ValidationError(ValidationError::Kind::Value, "--earth-moon-distance", "must be > 0");
    }
    if (is_preset(s.ref)) {
        return {preset(s.ref, opts),
                {{"ref", s.ref}, {"kind", "preset"}, {"earth_moon_distance_m", opts.earth_moon_distance}}};
    }
    if (!std::filesystem::exists(s.ref)) {
        throw UnknownReferenceError("'" + s.ref + "' is neither a preset nor an existing scenario file");
    }
    return {load_scenario_file(s.ref), {{"ref", s.ref}, {"kind", "file"}}};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + path + "'");
    f << content;
    f.flush();
    if (!f) throw IoError("failed writing '" + path + "'");
}

void emit(const RunReport& report, const CommonOptions& opts, std::ostream& out) {
    if (!opts.ledger_path.empty()) write_file(opts.ledger_path, discrepancy_csv(report.discrepancies));
    out << render(report, parse_format(opts.format));
}

json arm_lengths_json(const Scenario& s) { return json::array({arm_length(s, 0), arm_length(s, 1)}); }

json claims_json(const std::vector<GainClaim>& claims) {
    json arr = json::array();
    for (const GainClaim& c : claims) {
        arr.push_back({{"subject", c.subject},
                       {"reference", c.reference},
                       {"measure", c.measure},
                       {"quoted", c.quoted},
                       {"computed", c.computed},
                       {"tolerance_factor", c.tolerance_factor},
                       {"holds", c.holds()}});
    }
    return arr;
}

ChshSettings parse_settings(const std::string& text) {
    if (text.empty()) return ChshSettings::standard();
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(parse_angle(item, "--settings"));
    if (values.size() != 4) {
        throw ValidationError(ValidationError::Kind::Value, "--settings", "expected four angles a,a',b,b'");
    }
    return {AnalyzerAngle(values[0]), AnalyzerAngle(values[1]), AnalyzerAngle(values[2]), AnalyzerAngle(values[3])};
}

json settings_json(const ChshSettings& s) {
    return {{"a", s.a.radians()}, {"a_prime", s.a_prime.radians()}, {"b", s.b.radians()}, {"b_prime", s.b_prime.radians()}};
}

Fallback parse_fallback(const std::string& s) { return s == "lhv" ? Fallback::Lhv : Fallback::Uncorrelated; }

Departure parse_departure(const std::string& s) {
    return s == "end" ? Departure::MeasureEnd : Departure::MeasureStart;
}

// ── commands ────────────────────────────────────────────────────────────────

struct BoundArgs {
    CommonOptions common;
    ScenarioRef scenario;
    std::string tau;
};

RunReport run_bound(const BoundArgs& args) {
    const ResolvedScenario rs = resolve(args.scenario);
    std::optional<double> tau;
    if (!args.tau.empty()) tau = parse_duration(args.tau, "--tau");
    if (tau && !(*tau > 0.0)) throw ValidationError(ValidationError::Kind::Value, "--tau", "must be > 0");

    const SpeedBound b = speed_bound(rs.scenario, tau);
    const double v_gisin = speed_bound(preset("gisin1999")).v_min_over_c;
    const double v_cao = speed_bound(preset("cao2017")).v_min_over_c;
    const double v_moon = speed_bound(preset("earth_moon_case3")).v_min_over_c;

    RunReport r;
    r.command = "bound";
    r.inputs = {{"scenario", rs.echo}, {"tau_s", b.tau_s}, {"tau_overridden", tau.has_value()}};
    r.results = {{"scenario_name", rs.scenario.name},
                 {"L_max_m", b.max_arm_length_m},
                 {"tau_s", b.tau_s},
                 {"v_min_over_c", b.v_min_over_c},
                 {"arm_lengths_m", arm_lengths_json(rs.scenario)},
                 {"detector_separation_m", detector_separation(rs.scenario)},
                 {"gain_vs_gisin1999", b.v_min_over_c / v_gisin},
                 {"gain_vs_cao2017", b.v_min_over_c / v_cao},
                 {"gain_vs_earth_moon_case3", b.v_min_over_c / v_moon},
                 {"claims", claims_json(rs.echo.value("kind", "") == "preset" ? gain_claims(args.scenario.ref)
                                                                              : std::vector<GainClaim>{})}};
    r.discrepancies = discrepancy_ledger({ClaimTopic::SpeedBound, ClaimTopic::Geometry});
    return r;
}

struct SimArgs {
    CommonOptions common;
    ScenarioRef scenario;
    std::string speed = "inf";
    std::string fallback;
    std::string departure = "start";
    std::string settings;
    std::uint64_t n_pairs = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    bool equalize = false;
    std::string trace_path;
    std::size_t trace_cap = 1000;
};

void add_sim_options(CLI::App* cmd, SimArgs& a) {
    add_common(cmd, a.common);
    add_scenario(cmd, a.scenario);
    cmd->add_option("--fallback", a.fallback, "Statistics of unlinked pairs: lhv or uncorrelated")
        ->required()
        ->check(CLI::IsMember({"lhv", "uncorrelated"}));
    cmd->add_option("--departure", a.departure, "Influence departs at measurement start or end")
        ->check(CLI::IsMember({"start", "end"}));
    cmd->add_option("--settings", a.settings, "Analyzer angles a,a',b,b' (radians, or degrees with 'deg')");
    cmd->add_option("--n", a.n_pairs, "Pairs per run");
    cmd->add_option("--seed", a.seed, "Random seed");
    cmd->add_option("--workers", a.workers, "Worker threads (wall time only)")->check(CLI::PositiveNumber);
    cmd->add_flag("--equalize", a.equalize, "Delay the nearer arm so both measurements start together");
}

Scenario prepared_scenario(const SimArgs& a, ResolvedScenario& rs) {
    return a.equalize ? equalize_measure_starts(rs.scenario) : rs.scenario;
}

RunReport run_simulate(const SimArgs& a) {
    ResolvedScenario rs = resolve(a.scenario);
    const Scenario scenario = prepared_scenario(a, rs);
    const ChshSettings settings = parse_settings(a.settings);
    const CollapseModel model{parse_speed(a.speed, "--speed"), parse_fallback(a.fallback), parse_departure(a.departure)};
    if (a.n_pairs < kMinPairs) throw ValidationError(ValidationError::Kind::Value, "--n", "must be >= 4");

    SimulationOptions opts;
    opts.n_pairs = a.n_pairs;
    opts.seed = a.seed;
    opts.workers = a.workers;
    opts.trace_cap = a.trace_path.empty() ? 0 : a.trace_cap;
    const SimulationResult res = simulate(scenario, model, settings, opts);
    if (!a.trace_path.empty()) write_file(a.trace_path, trace_csv(res.trace));

    json cells = json::array();
    const auto pairs = settings.pairs();
    for (std::size_t i = 0; i < 4; ++i) {
        cells.push_back({{"a", pairs[i].first.radians()},
                         {"b", pairs[i].second.radians()},
                         {"E_hat", res.estimate.per_setting[i].e_hat},
                         {"n", res.estimate.per_setting[i].n},
                         {"E_quantum", quantum_correlation(pairs[i].first, pairs[i].second)}});
    }
    RunReport r;
    r.command = "simulate";
    r.seed = a.seed;
    r.inputs = {{"scenario", rs.echo},
                {"v_over_c", number_json(model.v_over_c)},
                {"fallback", to_string(model.fallback)},
                {"departure", to_string(model.departure)},
                {"settings", settings_json(settings)},
                {"n_pairs", a.n_pairs},
                {"equalize", a.equalize}};
    r.results = {{"S_hat", res.estimate.s_hat},
                 {"stderr_S", number_json(res.estimate.stderr_s)},
                 {"S_quantum", chsh_value(quantum_correlation, settings)},
                 {"S_lhv", chsh_value(lhv_correlation, settings)},
                 {"fraction_connected", res.fraction_connected},
                 {"critical_speed", number_json(critical_speed(scenario, model.departure))},
                 {"detector_separation_m", detector_separation(scenario)},
                 {"trace_path_length_m", arm_length(scenario, 0) + arm_length(scenario, 1)},
                 {"per_setting", std::move(cells)}};
    r.discrepancies = discrepancy_ledger({ClaimTopic::Chsh});
    return r;
}

struct SweepArgs {
    SimArgs sim;
    std::string v_min = "1";
    std::string v_max;
    std::size_t points = 20;
    std::string spacing = "log";
    std::string out_path;
};

RunReport run_sweep(const SweepArgs& a) {
    ResolvedScenario rs = resolve(a.sim.scenario);
    const Scenario scenario = prepared_scenario(a.sim, rs);
    const ChshSettings settings = parse_settings(a.sim.settings);
    const double v_min = parse_speed(a.v_min, "--vmin");
    const double v_max = a.v_max.empty() ? v_min : parse_speed(a.v_max, "--vmax");
    std::vector<double> grid;
    try {
        grid = speed_grid(v_min, v_max, a.points, a.spacing == "log");
    } catch (const std::invalid_argument& e) {
        throw ValidationError(ValidationError::Kind::Value, "grid", e.what());
    }
    if (a.sim.n_pairs < kMinPairs) throw ValidationError(ValidationError::Kind::Value, "--n", "must be >= 4");

    const Departure departure = parse_departure(a.sim.departure);
    const auto curve = sweep_speed(scenario, parse_fallback(a.sim.fallback), settings, grid, a.sim.n_pairs,
                                   a.sim.seed, a.sim.workers, departure);
    write_file(a.out_path, sweep_csv(curve));

    const double v_star = critical_speed(scenario, departure);
    json transition = nullptr;
    if (const auto br = find_transition(curve)) {
        transition = {{"v_lower", br->v_lower},
                      {"v_upper", br->v_upper},
                      {"contains_critical_speed", br->v_lower < v_star && v_star <= br->v_upper}};
    }
    RunReport r;
    r.command = "sweep";
    r.seed = a.sim.seed;
    r.inputs = {{"scenario", rs.echo},
                {"grid", {{"v_min", number_json(v_min)}, {"v_max", number_json(v_max)}, {"points", a.points},
                          {"spacing", a.spacing}}},
                {"fallback", a.sim.fallback},
                {"departure", to_string(departure)},
                {"settings", settings_json(settings)},
                {"n_pairs_per_point", a.sim.n_pairs},
                {"equalize", a.sim.equalize},
                {"out", a.out_path}};
    json rows = json::array();
    for (const SweepPoint& p : curve) {
        rows.push_back({{"v_over_c", number_json(p.v_over_c)},
                        {"S_hat", p.s_hat},
                        {"stderr_S", number_json(p.stderr_s)},
                        {"n_pairs", p.n_pairs},
                        {"fraction_connected", p.fraction_connected}});
    }
    r.results = {{"critical_speed", number_json(v_star)}, {"transition", transition}, {"rows", std::move(rows)}};
    r.discrepancies = discrepancy_ledger({ClaimTopic::Chsh});
    return r;
}

struct LinkArgs {
    CommonOptions common;
    std::string scenario;
    std::string length_a;
    std::string length_b;
    double pair_rate = 0.0;
    std::string reference_length = "500km";
    double reference_loss_db = 0.0;
    double eff_a = 1.0;
    double eff_b = 1.0;
    double s_expected = 2.0 * std::sqrt(2.0);
    double k_sigma = 3.0;
};

RunReport run_linkbudget(const LinkArgs& a) {
    std::array<double, 2> lengths{};
    json scenario_echo = nullptr;
    if (!a.length_a.empty() || !a.length_b.empty()) {
        if (a.length_a.empty() || a.length_b.empty() || !a.scenario.empty()) {
            throw ValidationError(ValidationError::Kind::Value, "--length-a/--length-b",
                                  "give both arm lengths, or a scenario");
        }
        lengths = {parse_length(a.length_a, "--length-a"), parse_length(a.length_b, "--length-b")};
    } else {
        const ResolvedScenario rs = resolve({a.scenario.empty() ? "earth_moon_case3" : a.scenario});
        lengths = {arm_length(rs.scenario, 0), arm_length(rs.scenario, 1)};
        scenario_echo = rs.echo;
    }
    if (!(a.pair_rate > 0.0)) throw ValidationError(ValidationError::Kind::Value, "--pair-rate", "must be > 0");

    const double ref_len = parse_length(a.reference_length, "--ref-length");
    std::array<double, 2> losses{};
    try {
        losses = {link_loss_db({lengths[0], ref_len, a.reference_loss_db, a.eff_a}),
                  link_loss_db({lengths[1], ref_len, a.reference_loss_db, a.eff_b})};
    } catch (const std::invalid_argument& e) {
        throw ValidationError(ValidationError::Kind::Value, "link", e.what());
    }
    const double rate = coincidence_rate(a.pair_rate, losses[0], losses[1], a.eff_a, a.eff_b);
    SignificancePlan plan;
    try {
        plan = pairs_for_significance(a.s_expected, a.k_sigma);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(ValidationError::Kind::Value, "--s-expected/--k-sigma", e.what());
    }
    using C = PhysicalConstants;
    const double quoted_threshold =
        cadence_threshold(ProperTimeFactor::from_correction(0.08), ProperTimeFactor::from_correction(0.0031));
    const double computed_threshold =
        cadence_threshold(proper_time_factor(C::GM_earth, C::R_earth), proper_time_factor(C::GM_moon, C::R_moon));
    const IntegrationTime t_quoted = integration_time(rate, plan.total_pairs, quoted_threshold);
    const IntegrationTime t_computed = integration_time(rate, plan.total_pairs, computed_threshold);

    RunReport r;
    r.command = "linkbudget";
    r.inputs = {{"scenario", scenario_echo},
                {"arm_lengths_m", {lengths[0], lengths[1]}},
                {"pair_rate", a.pair_rate},
                {"reference_length_m", ref_len},
                {"reference_loss_db", a.reference_loss_db},
                {"detector_efficiency", {a.eff_a, a.eff_b}},
                {"s_expected", a.s_expected},
                {"k_sigma", a.k_sigma}};
    r.results = {{"losses_db", {losses[0], losses[1]}},
                 {"coincidence_rate", rate},
                 {"pairs_required", {{"per_setting", plan.pairs_per_setting}, {"total", plan.total_pairs}}},
                 {"integration_time_s", t_quoted.seconds},
                 {"cadence_flag", t_quoted.correction_applies},
                 {"cadence",
                  {{"threshold_quoted_inputs", quoted_threshold},
                   {"applies_quoted_inputs", t_quoted.correction_applies},
                   {"threshold_constants", computed_threshold},
                   {"applies_constants", t_computed.correction_applies}}}};
    r.discrepancies = discrepancy_ledger({ClaimTopic::ProperTime});
    return r;
}

struct ScalesArgs {
    CommonOptions common;
    std::string exponents = "-1,0,1";
    std::string mass;
    std::string d_min = "0.01m";
    std::string d_max;
};

RunReport run_scales(const ScalesArgs& a) {
    std::vector<int> exponents;
    std::stringstream ss(a.exponents);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            exponents.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError(ValidationError::Kind::Value, "--N", "not an integer: '" + item + "'");
        }
    }
    if (exponents.empty()) throw ValidationError(ValidationError::Kind::Value, "--N", "empty exponent list");

    double mass = PhysicalConstants::m_proton;
    if (a.mass == "electron") mass = PhysicalConstants::m_electron;
    else if (!a.mass.empty() && a.mass != "proton") {
        try {
            mass = std::stod(a.mass);
        } catch (const std::exception&) {
            throw ValidationError(ValidationError::Kind::Value, "--mass", "expected kg, 'proton' or 'electron'");
        }
        if (!(mass > 0.0)) throw ValidationError(ValidationError::Kind::Value, "--mass", "must be > 0");
    }
    ObservationWindow window;
    window.d_min_m = parse_length(a.d_min, "--dmin");
    if (!a.d_max.empty()) window.d_max_m = parse_length(a.d_max, "--dmax");
    if (!(window.d_min_m < window.d_max_m)) {
        throw ValidationError(ValidationError::Kind::Value, "--dmin/--dmax", "D_min must be < D_max");
    }

    std::vector<AprioriCandidate> rows = apriori_scales(exponents, mass, window);
    rows.push_back(mond_candidate(window));
    json jrows = json::array();
    for (const AprioriCandidate& c : rows) {
        jrows.push_back({{"label", c.label},
                         {"N", c.exponent ? json(*c.exponent) : json(nullptr)},
                         {"v_over_c", c.v_over_c ? number_json(*c.v_over_c) : json(nullptr)},
                         {"distance_m", c.distance_m},
                         {"classification", to_string(c.classification)}});
    }
    RunReport r;
    r.command = "scales";
    r.inputs = {{"N", exponents}, {"mass_kg", mass}, {"window", {{"D_min_m", window.d_min_m}, {"D_max_m", window.d_max_m}}}};
    r.results = {{"kappa", gravitational_coupling(mass)}, {"rows", std::move(jrows)}};
    r.discrepancies = discrepancy_ledger({ClaimTopic::Scales});
    return r;
}

struct ValidateArgs {
    CommonOptions common;
    std::string path;
};

RunReport run_validate(const ValidateArgs& a) {
    if (!std::filesystem::exists(a.path)) throw UnknownReferenceError("no such scenario file '" + a.path + "'");
    const Scenario s = load_scenario_file(a.path);
    RunReport r;
    r.command = "validate";
    r.inputs = {{"path", a.path}};
    r.results = {{"valid", true},
                 {"name", s.name},
                 {"arm_lengths_m", arm_lengths_json(s)},
                 {"light_times_s", {light_time(arm_length(s, 0)), light_time(arm_length(s, 1))}},
                 {"taus_s", {s.arms[0].tau_s, s.arms[1].tau_s}}};
    return r;
}

struct PresetsArgs {
    CommonOptions common;
    std::string export_name;
};

RunReport run_presets(const PresetsArgs&) {
    RunReport r;
    r.command = "presets";
    json rows = json::array();
    for (const std::string& name : preset_names()) {
        const Scenario s = preset(name);
        rows.push_back({{"name", name},
                        {"arm0_length_m", arm_length(s, 0)},
                        {"arm1_length_m", arm_length(s, 1)},
                        {"detector_separation_m", detector_separation(s)},
                        {"v_min_over_c", speed_bound(s).v_min_over_c}});
    }
    r.results = {{"rows", std::move(rows)}};
    r.discrepancies = discrepancy_ledger({ClaimTopic::Geometry});
    return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bell-test simulator and speed-of-correlation bound calculator", "bellsim"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    BoundArgs bound;
    auto* c_bound = app.add_subcommand("bound", "Lower bound on the speed of quantum correlations");
    add_common(c_bound, bound.common);
    add_scenario(c_bound, bound.scenario);
    c_bound->add_option("--tau", bound.tau, "Measurement duration override, e.g. 10ps");

    SimArgs sim;
    sim.workers = default_workers();
    auto* c_sim = app.add_subcommand("simulate", "Monte Carlo CHSH run at one collapse speed");
    add_sim_options(c_sim, sim);
    c_sim->add_option("--speed", sim.speed, "Collapse speed in units of c, or inf");
    c_sim->add_option("--trace", sim.trace_path, "Write per-pair records as CSV");
    c_sim->add_option("--trace-cap", sim.trace_cap, "Maximum traced pairs");

    SweepArgs sweep;
    sweep.sim.workers = default_workers();
    auto* c_sweep = app.add_subcommand("sweep", "CHSH estimate over a grid of collapse speeds");
    add_sim_options(c_sweep, sweep.sim);
    c_sweep->add_option("--vmin", sweep.v_min, "Lowest speed, units of c");
    c_sweep->add_option("--vmax", sweep.v_max, "Highest speed, units of c");
    c_sweep->add_option("--points", sweep.points, "Grid points");
    c_sweep->add_option("--spacing", sweep.spacing, "log or linear")->check(CLI::IsMember({"log", "linear"}));
    c_sweep->add_option("--out", sweep.out_path, "CSV output path")->required();

    LinkArgs link;
    auto* c_link = app.add_subcommand("linkbudget", "Loss, coincidence rate and integration time");
    add_common(c_link, link.common);
    c_link->add_option("--scenario", link.scenario, "Preset or scenario file supplying arm lengths");
    c_link->add_option("--length-a", link.length_a, "Arm A length, e.g. 1km");
    c_link->add_option("--length-b", link.length_b, "Arm B length, e.g. 384400km");
    c_link->add_option("--pair-rate", link.pair_rate, "Source pair rate, pairs/s")->required();
    c_link->add_option("--ref-length", link.reference_length, "Length at which --ref-loss-db was measured");
    c_link->add_option("--ref-loss-db", link.reference_loss_db, "Total loss per arm at the reference length");
    c_link->add_option("--eff-a", link.eff_a, "Detector efficiency, arm A");
    c_link->add_option("--eff-b", link.eff_b, "Detector efficiency, arm B");
    c_link->add_option("--s-expected", link.s_expected, "Expected CHSH value");
    c_link->add_option("--k-sigma", link.k_sigma, "Required significance in standard errors");

    ScalesArgs scales;
    auto* c_scales = app.add_subcommand("scales", "A-priori distance and velocity scales");
    add_common(c_scales, scales.common);
    c_scales->add_option("--N", scales.exponents, "Comma-separated exponents");
    c_scales->add_option("--mass", scales.mass, "Mass in kg, or 'proton' / 'electron'");
    c_scales->add_option("--dmin", scales.d_min, "Smallest observable distance");
    c_scales->add_option("--dmax", scales.d_max, "Largest observable distance");

    ValidateArgs val;
    auto* c_val = app.add_subcommand("validate", "Check a scenario file");
    add_common(c_val, val.common);
    c_val->add_option("path", val.path, "Scenario JSON file")->required();

    PresetsArgs presets;
    auto* c_presets = app.add_subcommand("presets", "List built-in geometries or export one as JSON");
    add_common(c_presets, presets.common);
    c_presets->add_option("--export", presets.export_name, "Print this preset as a scenario document");

    std::vector<const char*> argv{"bellsim"};
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e, out, err);
        } catch (const CLI::CallForVersion& e) {
            return app.exit(e, out, err);
        } catch (const CLI::ParseError& e) {
            app.exit(e, err, err);
            return kExitValidation;
        }

        if (*c_bound) emit(run_bound(bound), bound.common, out);
        else if (*c_sim) emit(run_simulate(sim), sim.common, out);
        else if (*c_sweep) emit(run_sweep(sweep), sweep.sim.common, out);
        else if (*c_link) emit(run_linkbudget(link), link.common, out);
        else if (*c_scales) emit(run_scales(scales), scales.common, out);
        else if (*c_val) emit(run_validate(val), val.common, out);
        else if (*c_presets) {
            if (!presets.export_name.empty()) out << serialize_scenario(preset(presets.export_name));
            else emit(run_presets(presets), presets.common, out);
        }
        return kExitOk;
    } catch (const ValidationError& e) {
        err << "bellsim: validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const UnknownReferenceError& e) {
        err << "bellsim: unknown reference: " << e.what() << '\n';
        return kExitUnknownReference;
    } catch (const IoError& e) {
        err << "bellsim: i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "bellsim: invalid argument: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::domain_error& e) {
        err << "bellsim: invalid argument: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "bellsim: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace bellsim
