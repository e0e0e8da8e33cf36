#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "resil/composition.hpp"
#include "resil/failure_sim.hpp"

namespace resil {

/// Schema version understood by this build.
inline constexpr const char* kConfigSchemaVersion = "1";

/// Raised when a configuration document fails validation. Carries every
/// problem found, each prefixed with the field path.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const noexcept { return errors_; }

private:
    std::vector<std::string> errors_;
};

enum class SweepScale { Linear, Log };

struct SweepSpec {
    std::string parameter; ///< dotted path, e.g. system.components.0.pattern.degree
    double start = 0.0;
    double stop = 0.0;
    int steps = 2;
    SweepScale scale = SweepScale::Linear;

    /// Inclusive of both endpoints; geometric for the log scale.
    std::vector<double> grid() const;

    bool operator==(const SweepSpec&) const = default;
};

struct ConfigDocument {
    std::string version = kConfigSchemaVersion;
    Convention convention = Convention::Literal;
    ReconfigurationMode reconfiguration_mode = ReconfigurationMode::Literal;
    SystemModel system;
    double eval_time = 1.0;
    std::optional<SimScenario> scenario;
    std::vector<double> report_times; ///< times at which empirical curves are reported
    std::optional<SweepSpec> sweep;

    /// The document as written. Sweep values are applied here first so that
    /// fields inheriting a default follow the swept value.
    nlohmann::json source;

    /// Compares the validated content; `source` is ignored.
    bool operator==(const ConfigDocument& o) const;
};

/// Reads and validates a document. Throws ConfigError listing all problems.
ConfigDocument parse_config(const std::filesystem::path& path);
ConfigDocument parse_config_text(const std::string& text);
ConfigDocument parse_config_json(const nlohmann::json& j);

/// Canonical form with every default written out. Parsing it yields an
/// identical document.
nlohmann::ordered_json to_json(const ConfigDocument& doc);

/// Returns `doc` with the sweep parameter set to `value`, revalidated.
ConfigDocument with_parameter(const ConfigDocument& doc, const std::string& path, double value);

/// One document per sweep grid point, or `doc` itself when there is no sweep.
std::vector<ConfigDocument> expand_sweep(const ConfigDocument& doc);

} // namespace resil
