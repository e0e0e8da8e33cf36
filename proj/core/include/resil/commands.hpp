#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "resil/config.hpp"
#include "resil/report.hpp"

namespace resil {

/// A request the configuration cannot satisfy, such as `simulate` without a
/// scenario or `compare` across sections that describe different systems.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommandOptions {
    long long trials = 10000;
    std::uint64_t seed = 42;
    std::optional<Convention> convention; ///< overrides the document's convention
    unsigned workers = 0;                 ///< 0 = default_workers()
    std::ostream* trace = nullptr;        ///< JSON-lines trace of trial 0 per row
};

/// Analytic evaluation, one row per sweep point.
ReportDocument cmd_eval(const ConfigDocument& doc, const CommandOptions& opts = {});

/// Monte Carlo ensemble per sweep point. Requires a scenario section.
ReportDocument cmd_simulate(const ConfigDocument& doc, const CommandOptions& opts = {});

/// Literal and survival analytic reliabilities next to the empirical ones at
/// each report time. Requires a scenario that maps onto the system.
ReportDocument cmd_compare(const ConfigDocument& doc, const CommandOptions& opts = {});

/// Why `scenario` cannot stand in for `system`, or nullopt when it can.
std::optional<std::string> mapping_mismatch(const SystemModel& system, const SimScenario& scenario);

} // namespace resil
