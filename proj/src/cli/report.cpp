#include "bellsim/report.hpp"

#include <cmath>
#include <sstream>

#include "bellsim/errors.hpp"
#include "bellsim/format.hpp"

namespace bellsim {

using json = nlohmann::json;

ReportFormat parse_format(const std::string& name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "text") return ReportFormat::Text;
    throw ValidationError(ValidationError::Kind::Value, "--format", "expected json, csv or text");
}

json number_json(double value) {
    if (std::isfinite(value)) return value;
    return format_number(value);
}

json RunReport::to_json() const {
    json ledger = json::array();
    for (const Discrepancy& d : discrepancies) {
        ledger.push_back({{"claim_id", d.claim_id},
                          {"paper_location", d.location},
                          {"paper_value", number_json(d.quoted_value)},
                          {"computed_value", number_json(d.computed_value)},
                          {"relative_difference", number_json(d.relative_difference())}});
    }
    return {{"command", command},
            {"version", kVersion},
            {"seed", seed ? json(*seed) : json(nullptr)},
            {"inputs", inputs},
            {"results", results},
            {"discrepancies", std::move(ledger)}};
}

namespace {

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_number(v.get<double>());
    return v.dump();
}

void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (v.is_object()) {
        for (const auto& [key, child] : v.items()) flatten(child, prefix.empty() ? key : prefix + "." + key, out);
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out.emplace_back(prefix, scalar_text(v));
    }
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::string render_csv(const json& results) {
    std::ostringstream out;
    const auto rows = results.find("rows");
    if (rows != results.end() && rows->is_array() && !rows->empty() && rows->front().is_object()) {
        std::vector<std::string> columns;
        for (const auto& [key, _] : rows->front().items()) columns.push_back(key);
        for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << csv_cell(columns[i]);
        out << '\n';
        for (const json& row : *rows) {
            for (std::size_t i = 0; i < columns.size(); ++i) {
                const auto cell = row.find(columns[i]);
                out << (i ? "," : "") << (cell == row.end() ? "" : csv_cell(scalar_text(*cell)));
            }
            out << '\n';
        }
        return out.str();
    }
    std::vector<std::pair<std::string, std::string>> leaves;
    flatten(results, "", leaves);
    out << "key,value\n";
    for (const auto& [k, v] : leaves) out << csv_cell(k) << ',' << csv_cell(v) << '\n';
    return out.str();
}

}  // namespace

std::string render(const RunReport& report, ReportFormat format) {
    const json doc = report.to_json();
    switch (format) {
        case ReportFormat::Json: return doc.dump(2) + "\n";
        case ReportFormat::Csv: return render_csv(report.results);
        case ReportFormat::Text: {
            std::vector<std::pair<std::string, std::string>> leaves;
            flatten(doc, "", leaves);
            std::ostringstream out;
            for (const auto& [k, v] : leaves) out << k << ": " << v << '\n';
            return out.str();
        }
    }
    return {};
}

}  // namespace bellsim
