#include "bellsim/timing.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bellsim/constants.hpp"

namespace bellsim {

Femtoseconds to_femtoseconds(double seconds) {
    const double ticks = seconds * kFemtosecondsPerSecond;
    if (!std::isfinite(ticks) || std::abs(ticks) > 9.0e18) {
        throw std::overflow_error("duration does not fit in 64-bit femtoseconds");
    }
    return Femtoseconds{std::llround(ticks)};
}

double to_seconds(Femtoseconds t) {
    return static_cast<double>(t.count()) / kFemtosecondsPerSecond;
}

Femtoseconds light_delay(double length_m) {
    return to_femtoseconds(length_m / PhysicalConstants::c);
}

}  // namespace bellsim
