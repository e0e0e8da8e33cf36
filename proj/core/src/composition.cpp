#include "resil/composition.hpp"

#include <set>

namespace resil {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Probability baseline_reliability(const SystemModel& s, double t, Convention c)
{
    return exponential_reliability(t, s.event_model, c);
}

} // namespace

std::string pattern_tag(const PatternInstance& p)
{
    return std::visit(Overloaded{
                          [](const Unprotected&) { return "unprotected"; },
                          [](const DiagnosisParams&) { return "diagnosis"; },
                          [](const ReconfigurationParams&) { return "reconfiguration"; },
                          [](const RollbackPattern&) { return "rollback"; },
                          [](const RollForwardPattern&) { return "rollforward"; },
                          [](const RedundancyParams&) { return "redundancy"; },
                          [](const NVersionParams&) { return "nversion"; },
                      },
                      p);
}

Probability series_reliability(std::span<const Probability> values)
{
    if (values.empty())
        throw DomainError("series_reliability needs at least one component");
    double r = 1.0;
    for (const Probability& v : values) {
        if (!(v.value >= 0.0 && v.value <= 1.0))
            throw DomainError("component reliability outside [0,1]");
        r *= v.value;
    }
    return {r, false};
}

OverheadSum total_overhead(std::span<const ModelOutput> outputs)
{
    if (outputs.empty())
        throw DomainError("total_overhead needs at least one component output");
    OverheadSum sum;
    bool has_time = false;
    bool has_ratio = false;
    for (const ModelOutput& o : outputs) {
        sum.value += o.time_estimate;
        (o.kind == EstimateKind::Ratio ? has_ratio : has_time) = true;
    }
    if (has_time && has_ratio)
        sum.notes.emplace_back("total_overhead: sum mixes dimensionless ratios with times");
    return sum;
}

ModelOutput evaluate_component(const Component& c, const SystemModel& s, double t,
                               const EvaluationOptions& opts)
{
    if (!(t >= 0.0))
        throw DomainError("evaluation time must be nonnegative");
    const Convention conv = opts.convention;

    return std::visit(
        Overloaded{
            [&](const Unprotected&) {
                ModelOutput out;
                out.reliability = baseline_reliability(s, t, conv);
                out.notes.push_back("unprotected: event-model " +
                                    std::string(conv == Convention::Literal ? "1 - e^(-t/eta)"
                                                                            : "e^(-t/eta)"));
                return out;
            },
            [&](const DiagnosisParams& p) {
                ModelOutput out = diagnosis_overhead(p);
                out.reliability = baseline_reliability(s, t, conv);
                out.notes.emplace_back("diagnosis: component reliability taken from the event model");
                return out;
            },
            [&](const ReconfigurationParams& p) {
                ModelOutput out = reconfiguration_performance(p, opts.reconfiguration_mode);
                if (p.component_reliabilities.empty()) {
                    std::vector<Probability> rs(static_cast<std::size_t>(p.component_count),
                                                baseline_reliability(s, t, conv));
                    out.reliability = reconfiguration_reliability(rs);
                    out.notes.emplace_back("reconfiguration: R_i(t) taken from the event model");
                } else {
                    if (p.component_reliabilities.size() != static_cast<std::size_t>(p.component_count))
                        throw DomainError("component_reliabilities length must equal component_count");
                    out.reliability = reconfiguration_reliability(p.component_reliabilities);
                }
                return out;
            },
            [&](const RollbackPattern& p) { return rollback_with_failures(p.params, conv); },
            [&](const RollForwardPattern& p) { return rollforward_time(p.params, conv); },
            [&](const RedundancyParams& p) {
                ModelOutput out = redundancy_time(p);
                out.reliability = redundancy_reliability(t, p, &out.notes);
                return out;
            },
            [&](const NVersionParams& p) {
                ModelOutput out;
                out.reliability = nversion_reliability(t, p, conv, &out.notes);
                out.notes.emplace_back("n-version: no time model; overhead contribution 0");
                return out;
            },
        },
        c.pattern);
}

EvaluationReport evaluate_system(const SystemModel& s, double t, const EvaluationOptions& opts)
{
    if (s.components.empty())
        throw DomainError("system needs at least one component");
    std::set<std::string> names;
    for (const Component& c : s.components) {
        if (!names.insert(c.name).second)
            throw DomainError("duplicate component name '" + c.name + "'");
        if (!(c.scope_fraction >= 0.0 && c.scope_fraction <= 1.0))
            throw DomainError("component '" + c.name + "': scope_fraction must lie in [0,1]");
    }

    EvaluationReport report;
    std::vector<Probability> reliabilities;
    std::vector<ModelOutput> outputs;
    for (const Component& c : s.components) {
        ModelOutput out;
        try {
            out = evaluate_component(c, s, t, opts);
        } catch (const DomainError& e) {
            throw DomainError("component '" + c.name + "': " + e.what());
        }
        reliabilities.push_back(*out.reliability);
        for (const std::string& n : out.notes)
            report.diagnostics.push_back(c.name + ": " + n);
        outputs.push_back(out);
        report.per_component.emplace_back(c.name, std::move(out));
    }

    report.system_reliability = series_reliability(reliabilities);
    OverheadSum sum = total_overhead(outputs);
    report.total_overhead = sum.value;
    for (std::string& n : sum.notes)
        report.diagnostics.push_back(std::move(n));
    return report;
}

} // namespace resil
