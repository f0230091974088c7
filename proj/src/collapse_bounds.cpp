#include "bellsim/collapse_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellsim {

SpeedBound speed_bound(const Scenario& scenario, std::optional<double> tau_override_s) {
    const double tau = tau_override_s.value_or(std::max(scenario.arms[0].tau_s, scenario.arms[1].tau_s));
    if (!(tau > 0.0)) throw std::invalid_argument("speed_bound: tau must be > 0");
    const double l_max = std::max(arm_length(scenario, 0), arm_length(scenario, 1));
    return {l_max, tau, 2.0 * l_max / (tau * PhysicalConstants::c)};
}

double swapping_effective_length(double path_ab_m, double path_cd_m) {
    if (!(path_ab_m > 0.0) || !(path_cd_m > 0.0)) {
        throw std::invalid_argument("swapping_effective_length: lengths must be > 0");
    }
    return 2.0 * std::max(path_ab_m, path_cd_m);
}

double gain_factor(const Scenario& scenario_new, const Scenario& scenario_ref) {
    return speed_bound(scenario_new).v_min_over_c / speed_bound(scenario_ref).v_min_over_c;
}

ProperTimeFactor ProperTimeFactor::from_correction(double correction) {
    return {1.0 - correction, correction};
}

ProperTimeFactor proper_time_factor(double gm_m3_s2, double radius_m) {
    if (!(gm_m3_s2 >= 0.0) || !(radius_m > 0.0)) {
        throw std::invalid_argument("proper_time_factor: GM must be >= 0 and R > 0");
    }
    const double c = PhysicalConstants::c;
    return ProperTimeFactor::from_correction(gm_m3_s2 / (radius_m * c * c));
}

double cadence_threshold(const ProperTimeFactor& a, const ProperTimeFactor& b) {
    const double larger = std::max(a.correction, b.correction);
    if (!(larger > 0.0)) throw std::domain_error("cadence_threshold: both corrections are zero");
    return 1.0 / larger;
}

bool GainClaim::holds() const {
    const double ratio = computed / quoted;
    return ratio >= 1.0 / tolerance_factor && ratio <= tolerance_factor;
}

std::vector<GainClaim> gain_claims(std::string_view preset_name) {
    if (preset_name == "earth_moon_case1" || preset_name == "earth_moon_case2" || preset_name == "earth_moon_case3") {
        // "More or less 300": Earth-Moon distance over the 1203 km station baseline, 10% tolerance.
        const double ratio = PhysicalConstants::d_earth_moon_mean / detector_separation(preset("cao2017"));
        return {{std::string(preset_name), "cao2017", "detector_separation_ratio", 300.0, ratio, 1.1}};
    }
    if (preset_name == "lagrange_l4l5" || preset_name == "mars") {
        const double quoted = preset_name == "mars" ? 1000.0 : 20.0;
        const double ratio = gain_factor(preset(preset_name), preset("earth_moon_case3"));
        return {{std::string(preset_name), "earth_moon_case3", "speed_bound_ratio", quoted, ratio, 2.0}};
    }
    return {};
}

std::string to_string(ScaleClass c) {
    switch (c) {
        case ScaleClass::Excluded: return "excluded";
        case ScaleClass::UnobservableAtEarthMoon: return "unobservable_at_earth_moon";
        case ScaleClass::Observable: return "observable";
    }
    return "excluded";
}

double gravitational_coupling(double mass_kg) {
    if (!(mass_kg > 0.0)) throw std::invalid_argument("mass must be > 0");
    return PhysicalConstants::G * mass_kg * mass_kg / (PhysicalConstants::hbar * PhysicalConstants::c);
}

ScaleClass classify_scale(double distance_m, const ObservationWindow& window) {
    if (distance_m <= PhysicalConstants::planck_length || distance_m < window.d_min_m) return ScaleClass::Excluded;
    if (distance_m > window.d_max_m) return ScaleClass::UnobservableAtEarthMoon;
    return ScaleClass::Observable;
}

std::vector<AprioriCandidate> apriori_scales(const std::vector<int>& exponents, double mass_kg,
                                             const ObservationWindow& window) {
    if (exponents.empty()) throw std::invalid_argument("apriori_scales: empty exponent list");
    if (!(window.d_min_m < window.d_max_m)) throw std::invalid_argument("apriori_scales: D_min must be < D_max");
    const double kappa = gravitational_coupling(mass_kg);

    std::vector<AprioriCandidate> out;
    out.reserve(exponents.size());
    for (int n : exponents) {
        const double scale = std::pow(kappa, n);
        AprioriCandidate cand;
        cand.label = "N=" + std::to_string(n);
        cand.exponent = n;
        cand.v_over_c = scale;
        cand.distance_m = scale * PhysicalConstants::planck_length;
        cand.classification = classify_scale(cand.distance_m, window);
        out.push_back(std::move(cand));
    }
    return out;
}

AprioriCandidate mond_candidate(const ObservationWindow& window) {
    AprioriCandidate cand;
    cand.label = "MOND";
    cand.distance_m = 10.0 * PhysicalConstants::kpc;
    cand.classification = classify_scale(cand.distance_m, window);
    return cand;
}

}  // namespace bellsim
