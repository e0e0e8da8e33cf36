#pragma once

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "resil/event_model.hpp"
#include "resil/pattern_models.hpp"
#include "resil/probability.hpp"

namespace resil {

struct Unprotected {
    bool operator==(const Unprotected&) const = default;
};

struct RollbackPattern {
    CheckpointParams params;
    bool operator==(const RollbackPattern&) const = default;
};

struct RollForwardPattern {
    CheckpointParams params;
    bool operator==(const RollForwardPattern&) const = default;
};

using PatternInstance = std::variant<Unprotected, DiagnosisParams, ReconfigurationParams,
                                     RollbackPattern, RollForwardPattern, RedundancyParams,
                                     NVersionParams>;

/// Short lowercase tag ("unprotected", "rollback", ...) used in configs and reports.
std::string pattern_tag(const PatternInstance& p);

struct Component {
    std::string name;
    PatternInstance pattern = Unprotected{};
    double scope_fraction = 1.0;

    bool operator==(const Component&) const = default;
};

struct SystemModel {
    std::vector<Component> components;
    double base_time = 1.0;
    EventModel event_model{1.0};

    bool operator==(const SystemModel&) const = default;
};

struct EvaluationOptions {
    Convention convention = Convention::Literal;
    ReconfigurationMode reconfiguration_mode = ReconfigurationMode::Literal;
};

struct EvaluationReport {
    std::vector<std::pair<std::string, ModelOutput>> per_component;
    Probability system_reliability;
    double total_overhead = 0.0;
    std::vector<std::string> diagnostics;
};

/// Product of the reliabilities: the system fails when any component fails.
Probability series_reliability(std::span<const Probability> values);

struct OverheadSum {
    double value = 0.0;
    std::vector<std::string> notes;
};

/// Sum of the time estimates. Flags sums that mix ratios with times.
OverheadSum total_overhead(std::span<const ModelOutput> outputs);

/// Evaluates a single component at time `t` against the system-level event model.
ModelOutput evaluate_component(const Component& c, const SystemModel& s, double t,
                               const EvaluationOptions& opts = {});

/// Evaluates every component, multiplies their reliabilities and sums their
/// overheads. Component errors are rethrown with the component name attached.
EvaluationReport evaluate_system(const SystemModel& s, double t, const EvaluationOptions& opts = {});

} // namespace resil
