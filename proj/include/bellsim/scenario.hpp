#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bellsim/constants.hpp"

namespace bellsim {

/// Cartesian point in meters, privileged (lab) frame.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double k, const Vec3& v) { return {k * v.x, k * v.y, k * v.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;

    double norm() const;
    bool finite() const;
};

double distance(const Vec3& a, const Vec3& b);

struct Site {
    std::string name;
    Vec3 position;
};

/// Piecewise-linear route of a photon: source first, detector last,
/// intermediate vertices are mirrors.
class TracePath {
public:
    /// Throws ValidationError if fewer than two vertices or repeated consecutive vertices.
    explicit TracePath(std::vector<Vec3> vertices);

    const std::vector<Vec3>& vertices() const noexcept { return vertices_; }
    const Vec3& front() const { return vertices_.front(); }
    const Vec3& back() const { return vertices_.back(); }
    double length() const noexcept { return length_; }

private:
    std::vector<Vec3> vertices_;
    double length_ = 0.0;
};

struct Arm {
    Site detector;
    TracePath path;
    double tau_s = kDefaultTau;
    double offset_s = 0.0;
};

struct Scenario {
    std::string name;
    Site source;
    std::array<Arm, 2> arms;
    std::string frame_note;
};

/// Tolerance used when matching path endpoints to source and detector.
inline constexpr double kEndpointTolerance = 1e-3;

/// Checks every scenario invariant; throws ValidationError naming the field.
void validate(const Scenario& scenario);

/// Parses and validates a scenario JSON document. Unknown fields are rejected.
Scenario load_scenario(std::string_view document);
Scenario load_scenario_file(const std::string& path);

/// Pretty-printed JSON in the scenario file schema.
std::string serialize_scenario(const Scenario& scenario);

struct PresetOptions {
    double earth_moon_distance = PhysicalConstants::d_earth_moon_mean;
    /// Overrides the preset's own short-arm length when set.
    std::optional<double> local_arm_length;
};

const std::vector<std::string>& preset_names();
bool is_preset(std::string_view name);
/// Throws UnknownReferenceError for names outside preset_names().
Scenario preset(std::string_view name, const PresetOptions& options = {});

/// Source at the origin, detectors at +/- arm_length on the x axis.
Scenario symmetric_scenario(std::string name, double arm_length, double tau_s = kDefaultTau);

/// Copy of `scenario` with offsets chosen so both measurements start at the
/// same femtosecond tick.
Scenario equalize_measure_starts(const Scenario& scenario);

/// Throws std::out_of_range unless arm_index is 0 or 1.
double arm_length(const Scenario& scenario, std::size_t arm_index);

/// Straight-line distance between the two detectors.
double detector_separation(const Scenario& scenario);

/// Throws std::domain_error for negative length.
double light_time(double length_m);

}  // namespace bellsim
