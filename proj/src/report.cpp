#include "fragrisk/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace fragrisk {

void ScenarioReport::add_row(std::vector<ReportCell> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("report row has " + std::to_string(row.size()) +
                                    " cells, expected " + std::to_string(columns.size()));
    }
    rows.push_back(std::move(row));
}

const std::vector<ReportCell>& ScenarioReport::find_row(const std::string& label) const {
    for (const auto& row : rows) {
        if (!row.empty()) {
            if (const auto* s = std::get_if<std::string>(&row.front()); s && *s == label) {
                return row;
            }
        }
    }
    throw std::out_of_range("no report row labelled '" + label + "'");
}

double ScenarioReport::number_at(const std::string& row_label, const std::string& column) const {
    const auto& row = find_row(row_label);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == column) return std::get<double>(row.at(i));
    }
    throw std::out_of_range("no report column '" + column + "'");
}

std::string format_number(double value, int digits) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const ReportCell& cell, int digits) {
    if (const auto* d = std::get_if<double>(&cell)) return format_number(*d, digits);
    return std::get<std::string>(cell);
}

}  // namespace

std::string to_csv(const ScenarioReport& report, std::optional<int> digits) {
    const int d = digits.value_or(17);
    std::ostringstream out;
    for (const auto& [key, value] : report.metadata) {
        out << "# " << key << ": " << value << '\n';
    }
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        out << (i ? "," : "") << csv_field(report.columns[i]);
    }
    out << '\n';
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << csv_field(cell_text(row[i], d));
        }
        out << '\n';
    }
    return out.str();
}

std::string to_json(const ScenarioReport& report, std::optional<int> digits) {
    const int d = digits.value_or(17);
    nlohmann::ordered_json doc;
    doc["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.metadata) doc["metadata"][key] = value;
    doc["columns"] = report.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        auto jrow = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            if (const auto* v = std::get_if<double>(&cell)) {
                if (std::isfinite(*v)) {
                    // Re-parse the formatted text so --digits applies to JSON too.
                    jrow.push_back(std::stod(format_number(*v, d)));
                } else {
                    jrow.push_back(format_number(*v, d));
                }
            } else {
                jrow.push_back(std::get<std::string>(cell));
            }
        }
        doc["rows"].push_back(std::move(jrow));
    }
    return doc.dump(2) + "\n";
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace fragrisk
