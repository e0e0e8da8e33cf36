#include "resil/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "resil/probability.hpp"
#include "resil/version.hpp"

namespace resil {

namespace {

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell& c)
{
    struct {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(const std::string& v) const { return v; }
    } visitor;
    return std::visit(visitor, c);
}

nlohmann::ordered_json cell_json(const Cell& c)
{
    struct {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(double v) const
        {
            if (std::isfinite(v))
                return v;
            return format_double(v);
        }
        nlohmann::ordered_json operator()(long long v) const { return v; }
        nlohmann::ordered_json operator()(const std::string& v) const { return v; }
    } visitor;
    return std::visit(visitor, c);
}

} // namespace

const char* toolkit_version()
{
    return RESIL_VERSION_STRING;
}

void ReportDocument::add_diagnostic(const std::string& note)
{
    if (std::find(diagnostics.begin(), diagnostics.end(), note) == diagnostics.end())
        diagnostics.push_back(note);
}

ReportFormat report_format_from_string(const std::string& s)
{
    if (s == "csv")
        return ReportFormat::Csv;
    if (s == "structured" || s == "json")
        return ReportFormat::Structured;
    throw DomainError("unknown format '" + s + "' (expected csv|structured)");
}

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

void write_csv(std::ostream& os, const ReportDocument& r)
{
    os << "# resil " << toolkit_version() << " report_schema " << kReportSchemaVersion << " command "
       << r.command << '\n';
    os << "# seed " << r.seed << " trials " << r.trials << " convention " << r.convention << '\n';
    os << "# config " << r.inputs.dump() << '\n';
    for (const std::string& d : r.diagnostics)
        os << "# diagnostic " << d << '\n';

    for (std::size_t i = 0; i < r.columns.size(); ++i)
        os << (i ? "," : "") << csv_escape(r.columns[i]);
    os << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_escape(cell_text(row[i]));
        os << '\n';
    }
}

void write_structured(std::ostream& os, const ReportDocument& r)
{
    nlohmann::ordered_json j;
    j["toolkit"] = "resil";
    j["toolkit_version"] = toolkit_version();
    j["report_schema"] = kReportSchemaVersion;
    j["command"] = r.command;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["convention"] = r.convention;
    j["inputs"] = r.inputs;
    j["columns"] = r.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json jr = nlohmann::ordered_json::array();
        for (const Cell& c : row)
            jr.push_back(cell_json(c));
        j["rows"].push_back(std::move(jr));
    }
    j["diagnostics"] = r.diagnostics;
    os << j.dump(2) << '\n';
}

void write_report(std::ostream& os, const ReportDocument& r, ReportFormat f)
{
    if (f == ReportFormat::Csv)
        write_csv(os, r);
    else
        write_structured(os, r);
}

} // namespace resil
