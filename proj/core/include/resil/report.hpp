#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace resil {

/// Column schema version for every report this build writes.
inline constexpr const char* kReportSchemaVersion = "1";

const char* toolkit_version();

/// Empty, number, integer, or text.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct ReportDocument {
    std::string command;
    nlohmann::ordered_json inputs; ///< canonical config echo
    std::uint64_t seed = 0;
    long long trials = 0;
    std::string convention;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> diagnostics;
    bool has_row_errors = false;

    void add_diagnostic(const std::string& note); ///< keeps the first occurrence only
};

enum class ReportFormat { Csv, Structured };

ReportFormat report_format_from_string(const std::string& s);

/// Shortest round-trip decimal form; "inf"/"-inf"/"nan" for non-finite values.
std::string format_double(double v);

/// Provenance as '#' comment lines, then one header row and the data rows.
void write_csv(std::ostream& os, const ReportDocument& r);

/// JSON object with provenance, columns, rows and diagnostics.
void write_structured(std::ostream& os, const ReportDocument& r);

void write_report(std::ostream& os, const ReportDocument& r, ReportFormat f);

} // namespace resil
