#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fragrisk {

using ReportCell = std::variant<double, std::string>;

/// Tabular result shared by every CLI subcommand: named columns, rows, and
/// ordered metadata (command, config hash, seed, version, ...).
struct ScenarioReport {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<ReportCell>> rows;

    void add_metadata(std::string key, std::string value) {
        metadata.emplace_back(std::move(key), std::move(value));
    }
    /// Throws std::invalid_argument when the row width differs from columns.
    void add_row(std::vector<ReportCell> row);

    const std::vector<ReportCell>& find_row(const std::string& label) const;
    double number_at(const std::string& row_label, const std::string& column) const;
};

/// %.{digits}g formatting; 17 digits round-trips every double.
std::string format_number(double value, int digits = 17);

/// Metadata as "# key: value" lines, then a header line and the rows.
std::string to_csv(const ScenarioReport& report, std::optional<int> digits = std::nullopt);

/// {"metadata": {...}, "columns": [...], "rows": [[...], ...]}. Numbers are
/// written with the same formatting as CSV.
std::string to_json(const ScenarioReport& report, std::optional<int> digits = std::nullopt);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace fragrisk
