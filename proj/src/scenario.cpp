#include "bellsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "bellsim/errors.hpp"
#include "bellsim/timing.hpp"

namespace bellsim {

using json = nlohmann::json;

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

bool Vec3::finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

TracePath::TracePath(std::vector<Vec3> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2) {
        throw ValidationError(ValidationError::Kind::Geometry, "path", "needs at least 2 vertices");
    }
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (!vertices_[i].finite()) {
            throw ValidationError(ValidationError::Kind::Value, "path[" + std::to_string(i) + "]",
                                  "non-finite coordinate");
        }
        if (i > 0) {
            const double seg = distance(vertices_[i - 1], vertices_[i]);
            if (seg == 0.0) {
                throw ValidationError(ValidationError::Kind::Geometry, "path[" + std::to_string(i) + "]",
                                      "repeats the previous vertex");
            }
            length_ += seg;
        }
    }
}

namespace {

std::string arm_field(std::size_t i, std::string_view leaf) {
    return "arms[" + std::to_string(i) + "]." + std::string(leaf);
}

}  // namespace

void validate(const Scenario& s) {
    if (!s.source.position.finite()) {
        throw ValidationError(ValidationError::Kind::Value, "source.position", "non-finite coordinate");
    }
    for (std::size_t i = 0; i < s.arms.size(); ++i) {
        const Arm& arm = s.arms[i];
        if (!arm.detector.position.finite()) {
            throw ValidationError(ValidationError::Kind::Value, arm_field(i, "detector.position"),
                                  "non-finite coordinate");
        }
        if (!(arm.tau_s > 0.0) || !std::isfinite(arm.tau_s)) {
            throw ValidationError(ValidationError::Kind::Value, arm_field(i, "tau_s"), "must be > 0");
        }
        if (!(arm.offset_s >= 0.0) || !std::isfinite(arm.offset_s)) {
            throw ValidationError(ValidationError::Kind::Value, arm_field(i, "offset_s"), "must be >= 0");
        }
        const double head = distance(arm.path.front(), s.source.position);
        if (head > kEndpointTolerance) {
            throw ValidationError(ValidationError::Kind::Geometry, arm_field(i, "path[0]"),
                                  "starts " + std::to_string(head) + " m from the source");
        }
        const double tail = distance(arm.path.back(), arm.detector.position);
        if (tail > kEndpointTolerance) {
            throw ValidationError(ValidationError::Kind::Geometry,
                                  arm_field(i, "path[" + std::to_string(arm.path.vertices().size() - 1) + "]"),
                                  "ends " + std::to_string(tail) + " m from the detector");
        }
    }
}

// ── JSON ingestion ──────────────────────────────────────────────────────────

namespace {

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
    throw ValidationError(ValidationError::Kind::Schema, field, what);
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            schema_error(where.empty() ? key : where + "." + key, "unknown field");
        }
    }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(where.empty() ? key : where + "." + key, "missing field");
    return *it;
}

double read_number(const json& v, const std::string& field) {
    if (!v.is_number()) schema_error(field, "expected a number");
    return v.get<double>();
}

std::string read_string(const json& v, const std::string& field) {
    if (!v.is_string()) schema_error(field, "expected a string");
    return v.get<std::string>();
}

Vec3 read_point(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 3) schema_error(field, "expected [x, y, z]");
    return {read_number(v[0], field + "[0]"), read_number(v[1], field + "[1]"), read_number(v[2], field + "[2]")};
}

Site read_site(const json& v, const std::string& field) {
    if (!v.is_object()) schema_error(field, "expected an object");
    reject_unknown(v, {"name", "position"}, field);
    return {read_string(require(v, "name", field), field + ".name"),
            read_point(require(v, "position", field), field + ".position")};
}

Arm read_arm(const json& v, const std::string& field) {
    if (!v.is_object()) schema_error(field, "expected an object");
    reject_unknown(v, {"detector", "path", "tau_s", "offset_s"}, field);
    Site detector = read_site(require(v, "detector", field), field + ".detector");

    const json& jpath = require(v, "path", field);
    if (!jpath.is_array()) schema_error(field + ".path", "expected an array of points");
    std::vector<Vec3> vertices;
    for (std::size_t k = 0; k < jpath.size(); ++k) {
        vertices.push_back(read_point(jpath[k], field + ".path[" + std::to_string(k) + "]"));
    }
    std::optional<TracePath> path;
    try {
        path.emplace(std::move(vertices));
    } catch (const ValidationError& e) {
        throw ValidationError(e.kind(), field + "." + e.field(), e.message());
    }

    const double tau = read_number(require(v, "tau_s", field), field + ".tau_s");
    double offset = 0.0;
    if (auto it = v.find("offset_s"); it != v.end()) offset = read_number(*it, field + ".offset_s");
    return Arm{std::move(detector), std::move(*path), tau, offset};
}

json point_json(const Vec3& p) { return json::array({p.x, p.y, p.z}); }

json site_json(const Site& s) { return {{"name", s.name}, {"position", point_json(s.position)}}; }

}  // namespace

Scenario load_scenario(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ValidationError(ValidationError::Kind::Schema, "", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) schema_error("", "top level must be an object");
    reject_unknown(doc, {"name", "source", "arms", "frame_note"}, "");

    std::string name = read_string(require(doc, "name", ""), "name");
    Site source = read_site(require(doc, "source", ""), "source");
    const json& jarms = require(doc, "arms", "");
    if (!jarms.is_array() || jarms.size() != 2) schema_error("arms", "expected exactly 2 arms");
    Arm arm0 = read_arm(jarms[0], "arms[0]");
    Arm arm1 = read_arm(jarms[1], "arms[1]");
    std::string note;
    if (auto it = doc.find("frame_note"); it != doc.end()) note = read_string(*it, "frame_note");

    Scenario s{std::move(name), std::move(source), {std::move(arm0), std::move(arm1)}, std::move(note)};
    validate(s);
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
    json arms = json::array();
    for (const Arm& arm : s.arms) {
        json path = json::array();
        for (const Vec3& v : arm.path.vertices()) path.push_back(point_json(v));
        arms.push_back({{"detector", site_json(arm.detector)},
                        {"path", std::move(path)},
                        {"tau_s", arm.tau_s},
                        {"offset_s", arm.offset_s}});
    }
    json doc = {{"name", s.name}, {"source", site_json(s.source)}, {"arms", std::move(arms)}};
    if (!s.frame_note.empty()) doc["frame_note"] = s.frame_note;
    return doc.dump(2) + "\n";
}

// ── presets ─────────────────────────────────────────────────────────────────

namespace {

constexpr const char* kLabFrame = "privileged frame at rest with the laboratory; static snapshot";

Arm straight_arm(Site detector, const Vec3& from) {
    TracePath path({from, detector.position});
    return Arm{std::move(detector), std::move(path), kDefaultTau, 0.0};
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{
        "gisin1999", "cao2017", "earth_moon_case1", "earth_moon_case2", "earth_moon_case3", "lagrange_l4l5", "mars"};
    return names;
}

bool is_preset(std::string_view name) {
    const auto& names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

Scenario preset(std::string_view name, const PresetOptions& options) {
    const double d = options.earth_moon_distance;
    const auto local = [&](double fallback) { return options.local_arm_length.value_or(fallback); };
    const Vec3 origin{};

    if (name == "gisin1999") {
        // Source at the midpoint of the 10.6 km fibre baseline.
        const double half = 5300.0;
        Site src{"source (baseline midpoint)", origin};
        return Scenario{std::string(name), src,
                        {straight_arm({"analyzer A", {-half, 0, 0}}, origin),
                         straight_arm({"analyzer B", {half, 0, 0}}, origin)},
                        kLabFrame};
    }
    if (name == "cao2017") {
        // Two ground stations 1203 km apart, satellite 700 km slant range from each.
        const double half_base = 601'500.0;
        const double slant = 700'000.0;
        const double height = std::sqrt(slant * slant - half_base * half_base);
        Site src{"satellite source", {0, 0, height}};
        return Scenario{std::string(name), src,
                        {straight_arm({"ground station A", {-half_base, 0, 0}}, src.position),
                         straight_arm({"ground station B", {half_base, 0, 0}}, src.position)},
                        kLabFrame};
    }
    if (name == "earth_moon_case1") {
        Site src{"Earth source", origin};
        return Scenario{std::string(name), src,
                        {straight_arm({"Earth local analyzer", {-local(1000.0), 0, 0}}, origin),
                         straight_arm({"Moon analyzer", {d, 0, 0}}, origin)},
                        kLabFrame};
    }
    if (name == "earth_moon_case2") {
        Site src{"Earth source", origin};
        Site ret{"Earth return analyzer", origin};
        TracePath bounce({origin, {d, 0, 0}, origin});
        return Scenario{std::string(name), src,
                        {straight_arm({"Earth local analyzer", {-local(1000.0), 0, 0}}, origin),
                         Arm{std::move(ret), std::move(bounce), kDefaultTau, 0.0}},
                        kLabFrame};
    }
    if (name == "earth_moon_case3") {
        // The local analyzer sits next to the lunar source: its light time is
        // below one femtosecond, so the unequalized critical speed stays under c.
        const Vec3 moon{d, 0, 0};
        Site src{"Moon source", moon};
        return Scenario{std::string(name), src,
                        {straight_arm({"Moon local analyzer", {d + local(1e-4), 0, 0}}, moon),
                         straight_arm({"Earth analyzer", origin}, moon)},
                        kLabFrame};
    }
    if (name == "lagrange_l4l5") {
        // Source spacecraft beyond the Earth-Moon system, analyzers on Earth
        // and Moon; 5e9 m is the inter-spacecraft scale of LISA-type formations.
        const Vec3 craft{0, 5.0e9, 0};
        Site src{"spacecraft source", craft};
        return Scenario{std::string(name), src,
                        {straight_arm({"Earth analyzer", origin}, craft),
                         straight_arm({"Moon analyzer", {d, 0, 0}}, craft)},
                        kLabFrame};
    }
    if (name == "mars") {
        Site src{"Earth source", origin};
        return Scenario{std::string(name), src,
                        {straight_arm({"Earth local analyzer", {-local(1000.0), 0, 0}}, origin),
                         straight_arm({"Mars analyzer", {PhysicalConstants::d_earth_mars_typical, 0, 0}}, origin)},
                        kLabFrame};
    }
    throw UnknownReferenceError("unknown preset '" + std::string(name) + "'");
}

Scenario symmetric_scenario(std::string name, double arm_length, double tau_s) {
    const Vec3 origin{};
    Scenario s{std::move(name), Site{"source", origin},
               {straight_arm({"analyzer A", {-arm_length, 0, 0}}, origin),
                straight_arm({"analyzer B", {arm_length, 0, 0}}, origin)},
               kLabFrame};
    s.arms[0].tau_s = s.arms[1].tau_s = tau_s;
    validate(s);
    return s;
}

Scenario equalize_measure_starts(const Scenario& scenario) {
    Scenario out = scenario;
    const Femtoseconds a0 = light_delay(out.arms[0].path.length());
    const Femtoseconds a1 = light_delay(out.arms[1].path.length());
    const Femtoseconds late = std::max(a0, a1);
    out.arms[0].offset_s = to_seconds(late - a0);
    out.arms[1].offset_s = to_seconds(late - a1);
    return out;
}

double arm_length(const Scenario& scenario, std::size_t arm_index) {
    if (arm_index >= scenario.arms.size()) {
        throw std::out_of_range("arm index " + std::to_string(arm_index) + " (expected 0 or 1)");
    }
    return scenario.arms[arm_index].path.length();
}

double detector_separation(const Scenario& scenario) {
    return distance(scenario.arms[0].detector.position, scenario.arms[1].detector.position);
}

double light_time(double length_m) {
    if (length_m < 0.0) throw std::domain_error("light_time: negative length");
    return length_m / PhysicalConstants::c;
}

}  // namespace bellsim
