#pragma once

#include <stdexcept>
#include <string>

namespace bellsim {

/// Bad input: schema, geometry or value violation. `field()` is a JSON-style
/// path such as "arms[1].tau_s", empty when not tied to a field.
class ValidationError : public std::invalid_argument {
public:
    enum class Kind { Schema, Geometry, Value };

    ValidationError(Kind kind, std::string field, const std::string& what)
        : std::invalid_argument(field.empty() ? what : field + ": " + what),
          kind_(kind),
          field_(std::move(field)),
          message_(what) {}

    Kind kind() const noexcept { return kind_; }
    const std::string& field() const noexcept { return field_; }
    /// The diagnostic without the field prefix.
    const std::string& message() const noexcept { return message_; }

private:
    Kind kind_;
    std::string field_;
    std::string message_;
};

/// A named reference (preset, scenario file) that does not resolve.
class UnknownReferenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bellsim
