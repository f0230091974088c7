#pragma once

namespace bellsim {

/// CODATA / IAU reference values in SI units.
struct PhysicalConstants {
    static constexpr double c = 299'792'458.0;            // m/s, exact
    static constexpr double G = 6.67430e-11;              // m^3/(kg s^2)
    static constexpr double hbar = 1.054571817e-34;       // J s
    static constexpr double GM_earth = 3.986004418e14;    // m^3/s^2
    static constexpr double GM_moon = 4.9048695e12;       // m^3/s^2
    static constexpr double R_earth = 6.371e6;            // m, mean radius
    static constexpr double R_moon = 1.7374e6;            // m, mean radius
    static constexpr double m_proton = 1.67262192369e-27; // kg
    static constexpr double m_electron = 9.1093837015e-31;// kg
    static constexpr double d_earth_moon_mean = 3.844e8;  // m
    static constexpr double d_earth_moon_rounded = 3.9e8; // m, the round figure often quoted
    static constexpr double d_earth_mars_typical = 2.25e11; // m
    static constexpr double kpc = 3.0856775814913673e19;  // m
    static constexpr double planck_length = 1.616255e-35; // m
};

/// Measurement window: 2.5 ps timing uncertainty + 2.5 ps detector response.
inline constexpr double kTimingUncertainty = 2.5e-12;
inline constexpr double kDetectorResponse = 2.5e-12;
inline constexpr double kDefaultTau = kTimingUncertainty + kDetectorResponse;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace bellsim
