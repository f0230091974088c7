#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bellsim/discrepancy.hpp"

namespace bellsim {

inline constexpr const char* kVersion = "0.1.0";

enum class ReportFormat { Json, Csv, Text };

ReportFormat parse_format(const std::string& name);

/// Machine-readable result of one CLI command.
struct RunReport {
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();   // resolved inputs, defaults filled in
    nlohmann::json results = nlohmann::json::object();
    std::vector<Discrepancy> discrepancies;
    std::optional<std::uint64_t> seed;

    nlohmann::json to_json() const;
};

/// JSON number, or the string "inf"/"-inf"/"nan" for non-finite values.
nlohmann::json number_json(double value);

/// json: the whole report. csv: `results.rows` as a table when present,
/// otherwise flattened key,value pairs. text: one "key: value" line per leaf.
std::string render(const RunReport& report, ReportFormat format);

}  // namespace bellsim
