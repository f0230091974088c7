#pragma once

#include <chrono>
#include <cstdint>
#include <ratio>

namespace bellsim {

/// Event timestamps in the privileged frame. 64-bit femtoseconds cover about
/// 2.5 hours, enough for interplanetary light times next to picosecond windows.
using Femtoseconds = std::chrono::duration<std::int64_t, std::femto>;

inline constexpr double kFemtosecondsPerSecond = 1e15;

/// Rounds a duration in seconds to the nearest femtosecond.
Femtoseconds to_femtoseconds(double seconds);
double to_seconds(Femtoseconds t);

/// Light travel time along `length_m`, rounded to the nearest femtosecond.
Femtoseconds light_delay(double length_m);

}  // namespace bellsim
