#include "bellsim/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bellsim/bell_core.hpp"
#include "bellsim/collapse_bounds.hpp"
#include "bellsim/format.hpp"

namespace bellsim {

double Discrepancy::relative_difference() const {
    return std::abs(computed_value - quoted_value) / std::abs(quoted_value);
}

std::vector<Discrepancy> discrepancy_ledger() {
    using C = PhysicalConstants;
    const ChshSettings std_settings = ChshSettings::standard();

    // The printed combination flips the sign of the last term.
    double printed = 0.0;
    const auto pairs = std_settings.pairs();
    constexpr int printed_signs[4] = {+1, -1, +1, -1};
    for (std::size_t i = 0; i < 4; ++i) printed += printed_signs[i] * quantum_correlation(pairs[i].first, pairs[i].second);

    const Scenario gisin = preset("gisin1999");
    const Scenario cao = preset("cao2017");
    const Scenario moon3 = preset("earth_moon_case3");
    const double v_gisin = speed_bound(gisin).v_min_over_c;
    const double v_cao = speed_bound(cao).v_min_over_c;

    const ProperTimeFactor earth = proper_time_factor(C::GM_earth, C::R_earth);
    const ProperTimeFactor moon = proper_time_factor(C::GM_moon, C::R_moon);
    const double quoted_cadence =
        cadence_threshold(ProperTimeFactor::from_correction(0.08), ProperTimeFactor::from_correction(0.0031));

    const double kappa = gravitational_coupling(C::m_proton);
    const auto scales = apriori_scales({-1, 1}, C::m_proton);

    using T = ClaimTopic;
    return {
        {"chsh_quantum_value", "bell-inequality/quantum-prediction", 2.2,
         chsh_value(quantum_correlation, std_settings), T::Chsh},
        {"chsh_printed_sign_combination", "bell-inequality/quantum-prediction", 2.2, printed, T::Chsh},
        {"gisin_bound_quoted", "speed-bound/gisin-quotation", 32e7, v_gisin, T::SpeedBound},
        {"gisin_bound_order", "speed-bound/gisin-estimate", 7e6, v_gisin, T::SpeedBound},
        {"gisin_bound_700000", "speed-bound/gisin-estimate", 7e5, v_gisin, T::SpeedBound},
        {"gisin_baseline_m", "speed-bound/gisin-estimate", 1e4, detector_separation(gisin), T::SpeedBound},
        {"cao_slant_range_m", "satellite-bound/slant-range", 7e5, std::sqrt(2.0) * 500e3, T::SpeedBound},
        {"cao_bound_order", "satellite-bound/estimate", 1e7, v_cao, T::SpeedBound},
        {"cao_over_gisin", "satellite-bound/estimate", 15.0, v_cao / v_gisin, T::SpeedBound},
        {"earth_moon_distance_m", "abstract", C::d_earth_moon_rounded, C::d_earth_moon_mean, T::Geometry},
        {"earth_moon_distance_gain", "earth-moon/gain", 300.0,
         detector_separation(moon3) / detector_separation(cao), T::Geometry},
        {"earth_moon_bound_gain", "earth-moon/gain", 300.0, gain_factor(moon3, cao), T::Geometry},
        {"lagrange_gain", "earth-moon/lagrange", 20.0, gain_factor(preset("lagrange_l4l5"), moon3), T::Geometry},
        {"mars_gain", "beyond-moon/mars", 1000.0, gain_factor(preset("mars"), moon3), T::Geometry},
        {"proper_time_correction_earth", "earth-moon/proper-time", 0.08, earth.correction, T::ProperTime},
        {"proper_time_correction_moon", "earth-moon/proper-time", 0.0031, moon.correction, T::ProperTime},
        {"cadence_threshold_quoted_inputs", "earth-moon/proper-time", 12.0, quoted_cadence, T::ProperTime},
        {"cadence_threshold_constants", "earth-moon/proper-time", 12.0, cadence_threshold(earth, moon),
         T::ProperTime},
        {"coupling_constant", "a-priori-scales", 1e-39, kappa, T::Scales},
        {"planck_length_m", "a-priori-scales", 1e-35, C::planck_length, T::Scales},
        {"apriori_distance_n_minus_1_m", "a-priori-scales", 1e37, scales[0].distance_m, T::Scales},
        {"apriori_distance_n_plus_1_m", "a-priori-scales", 1e-41, scales[1].distance_m, T::Scales},
    };
}

std::vector<Discrepancy> discrepancy_ledger(std::initializer_list<ClaimTopic> topics) {
    std::vector<Discrepancy> rows = discrepancy_ledger();
    std::erase_if(rows, [&](const Discrepancy& d) {
        return std::find(topics.begin(), topics.end(), d.topic) == topics.end();
    });
    return rows;
}

std::string discrepancy_csv(const std::vector<Discrepancy>& rows) {
    std::ostringstream out;
    out << "claim_id,paper_location,paper_value,computed_value,relative_difference\n";
    for (const Discrepancy& d : rows) {
        out << d.claim_id << ',' << d.location << ',' << format_number(d.quoted_value) << ','
            << format_number(d.computed_value) << ',' << format_number(d.relative_difference()) << '\n';
    }
    return out.str();
}

}  // namespace bellsim
