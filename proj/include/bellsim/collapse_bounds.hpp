#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bellsim/scenario.hpp"

namespace bellsim {

/// Lower bound on the speed of quantum correlations for one geometry.
struct SpeedBound {
    double max_arm_length_m = 0.0;
    double tau_s = 0.0;
    double v_min_over_c = 0.0;
};

/// v_min/c = 2 L_max / (tau c). tau defaults to the larger arm duration.
SpeedBound speed_bound(const Scenario& scenario, std::optional<double> tau_override_s = std::nullopt);

/// Effective trace length for entanglement swapping: twice the longer of the
/// two source-mediated paths A-source-B and C-source-D. Divide by tau*c for
/// the swapping bound.
double swapping_effective_length(double path_ab_m, double path_cd_m);

/// Ratio of speed bounds, new over reference.
double gain_factor(const Scenario& scenario_new, const Scenario& scenario_ref);

/// Gravitational proper-time rate at a body's surface: alpha = 1 - GM/(R c^2).
struct ProperTimeFactor {
    double alpha = 1.0;
    double correction = 0.0;

    /// Builds a factor from a quoted correction 1 - alpha.
    static ProperTimeFactor from_correction(double correction);
};

ProperTimeFactor proper_time_factor(double gm_m3_s2, double radius_m);

/// Detection cadence (photons/s) above which the larger correction matters:
/// 1 / max(correction_a, correction_b). Throws std::domain_error when both are zero.
double cadence_threshold(const ProperTimeFactor& a, const ProperTimeFactor& b);

/// A published gain figure for a preset, checked against the computed ratio.
struct GainClaim {
    std::string subject;
    std::string reference;
    std::string measure;        // "detector_separation_ratio" or "speed_bound_ratio"
    double quoted = 0.0;
    double computed = 0.0;
    double tolerance_factor = 1.0;  // claim holds when computed/quoted is within [1/f, f]

    bool holds() const;
};

/// Gain claims attached to a preset (empty when the preset has none).
std::vector<GainClaim> gain_claims(std::string_view preset_name);

enum class ScaleClass { Excluded, UnobservableAtEarthMoon, Observable };

std::string to_string(ScaleClass c);

struct ObservationWindow {
    double d_min_m = 1e-2;
    double d_max_m = 10.0 * PhysicalConstants::d_earth_moon_mean;
};

struct AprioriCandidate {
    std::string label;
    std::optional<int> exponent;  // empty for the MOND scale
    /// Finite-base velocity kappa^N; the infinite base stays infinite for every N. Empty for MOND.
    std::optional<double> v_over_c;
    double distance_m = 0.0;
    ScaleClass classification = ScaleClass::Excluded;
};

/// kappa = G m^2 / (hbar c), dimensionless.
double gravitational_coupling(double mass_kg);

/// Classifies a distance scale against the window; total and deterministic.
ScaleClass classify_scale(double distance_m, const ObservationWindow& window);

/// For each N: V = kappa^N c and D = kappa^N * Planck length.
/// Throws std::invalid_argument on an empty list or an inverted window.
std::vector<AprioriCandidate> apriori_scales(const std::vector<int>& exponents, double mass_kg,
                                             const ObservationWindow& window = {});

/// The ~10 kpc MOND acceleration scale as a candidate distance.
AprioriCandidate mond_candidate(const ObservationWindow& window = {});

}  // namespace bellsim
