#pragma once

#include <string_view>

namespace bellsim {

// Command-line quantities. Every parser returns SI values and throws
// ValidationError(Kind::Value) naming `field` on malformed input.

/// "5ps", "2.5 ns", "1e-3s", "10fs", "3us", "2ms"; a bare number is seconds.
double parse_duration(std::string_view text, std::string_view field = "duration");

/// "384400km", "10.6 km", "500m"; a bare number is meters.
double parse_length(std::string_view text, std::string_view field = "length");

/// "22.5deg" or "0.39rad"; a bare number is radians. Degrees need the suffix.
double parse_angle(std::string_view text, std::string_view field = "angle");

/// A speed in units of c; accepts "inf".
double parse_speed(std::string_view text, std::string_view field = "speed");

}  // namespace bellsim
