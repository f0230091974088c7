#include "bellsim/units.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "bellsim/constants.hpp"
#include "bellsim/errors.hpp"

namespace bellsim {

namespace {

[[noreturn]] void bad(std::string_view field, std::string_view text, std::string_view expected) {
    throw ValidationError(ValidationError::Kind::Value, std::string(field),
                          "cannot parse '" + std::string(text) + "' (expected " + std::string(expected) + ")");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Splits "12.5 km" into (12.5, "km").
std::pair<double, std::string_view> split_quantity(std::string_view text, std::string_view field,
                                                   std::string_view expected) {
    const std::string_view s = trim(text);
    double value = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || !std::isfinite(value)) bad(field, text, expected);
    return {value, trim(std::string_view(res.ptr, static_cast<std::size_t>(s.data() + s.size() - res.ptr)))};
}

}  // namespace

double parse_duration(std::string_view text, std::string_view field) {
    constexpr std::string_view expected = "a duration such as 5ps, 1ns or 0.5s";
    const auto [value, unit] = split_quantity(text, field, expected);
    double scale = 0.0;
    if (unit.empty() || unit == "s") scale = 1.0;
    else if (unit == "ms") scale = 1e-3;
    else if (unit == "us") scale = 1e-6;
    else if (unit == "ns") scale = 1e-9;
    else if (unit == "ps") scale = 1e-12;
    else if (unit == "fs") scale = 1e-15;
    else bad(field, text, expected);
    return value * scale;
}

double parse_length(std::string_view text, std::string_view field) {
    constexpr std::string_view expected = "a length such as 500m or 384400km";
    const auto [value, unit] = split_quantity(text, field, expected);
    if (unit.empty() || unit == "m") return value;
    if (unit == "km") return value * 1e3;
    bad(field, text, expected);
}

double parse_angle(std::string_view text, std::string_view field) {
    constexpr std::string_view expected = "radians or degrees with a 'deg' suffix";
    const auto [value, unit] = split_quantity(text, field, expected);
    if (unit.empty() || unit == "rad") return value;
    if (unit == "deg") return value * kPi / 180.0;
    bad(field, text, expected);
}

double parse_speed(std::string_view text, std::string_view field) {
    const std::string_view s = trim(text);
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    const auto [value, unit] = split_quantity(s, field, "a positive multiple of c or 'inf'");
    if (!unit.empty() && unit != "c") bad(field, text, "a positive multiple of c or 'inf'");
    if (!(value > 0.0)) bad(field, text, "a positive multiple of c or 'inf'");
    return value;
}

}  // namespace bellsim
