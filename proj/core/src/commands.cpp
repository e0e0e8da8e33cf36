#include "resil/commands.hpp"

#include <cmath>
#include <ostream>

#include "resil/random.hpp"

namespace resil {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool same(double a, double b)
{
    return a == b || std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

ReportDocument start_report(const std::string& command, const ConfigDocument& doc, const CommandOptions& opts,
                            bool stochastic)
{
    ReportDocument r;
    r.command = command;
    r.inputs = to_json(doc);
    r.seed = stochastic ? opts.seed : 0;
    r.trials = stochastic ? opts.trials : 0;
    r.convention = command == "compare" ? "both" : to_string(opts.convention.value_or(doc.convention));
    r.columns.push_back("row");
    if (doc.sweep)
        r.columns.push_back(doc.sweep->parameter);
    return r;
}

std::vector<Cell> start_row(std::size_t index, const ConfigDocument& doc, const std::vector<double>& grid)
{
    std::vector<Cell> row{static_cast<long long>(index)};
    if (doc.sweep)
        row.emplace_back(grid[index]);
    return row;
}

std::vector<double> sweep_grid(const ConfigDocument& doc)
{
    return doc.sweep ? doc.sweep->grid() : std::vector<double>{};
}

// Pads an errored row so every row has the header's width.
void finish_error_row(ReportDocument& r, std::vector<Cell>& row, const std::string& msg)
{
    while (row.size() + 1 < r.columns.size())
        row.emplace_back(std::monostate{});
    row.emplace_back("error: " + msg);
    r.has_row_errors = true;
}

std::string time_label(double t)
{
    return format_double(t);
}

const char* kind_name(EstimateKind k)
{
    return k == EstimateKind::Time ? "time" : "ratio";
}

} // namespace

std::optional<std::string> mapping_mismatch(const SystemModel& system, const SimScenario& scenario)
{
    if (system.components.size() != 1)
        return "compare needs exactly one system component to map onto the scenario, found " +
            std::to_string(system.components.size());
    const Component& c = system.components.front();
    const double mtti = scenario.effective_mtti();
    const std::string where = "component '" + c.name + "' (" + pattern_tag(c.pattern) + ") vs scenario policy " +
        policy_tag(scenario.policy) + ": ";

    auto mismatch = [&](const std::string& what) -> std::optional<std::string> { return where + what; };

    return std::visit(
        Overloaded{
            [&](const NoPolicy&) -> std::optional<std::string> {
                if (!std::holds_alternative<Unprotected>(c.pattern))
                    return mismatch("policy none maps only onto an unprotected component");
                if (!same(system.event_model.mtti(), mtti))
                    return mismatch("system mtti differs from the scenario's effective mtti");
                return std::nullopt;
            },
            [&](const CheckpointPolicy& p) -> std::optional<std::string> {
                const CheckpointParams* cp = nullptr;
                if (const auto* rb = std::get_if<RollbackPattern>(&c.pattern))
                    cp = &rb->params;
                else if (const auto* rf = std::get_if<RollForwardPattern>(&c.pattern))
                    cp = &rf->params;
                if (!cp || cp->mode != RecoveryMode::Checkpointing)
                    return mismatch("checkpoint policy maps only onto a checkpointing rollback/rollforward component");
                if (!same(cp->checkpoint_cost, p.cost))
                    return mismatch("checkpoint_cost differs from policy cost");
                if (!same(cp->recovery_cost, p.recovery))
                    return mismatch("recovery_cost differs from policy recovery");
                if (!same(cp->event_model.mtti(), mtti))
                    return mismatch("component mtti differs from the scenario's effective mtti");
                return std::nullopt;
            },
            [&](const ReplicationPolicy& p) -> std::optional<std::string> {
                const auto* rp = std::get_if<RedundancyParams>(&c.pattern);
                if (!rp)
                    return mismatch("replication policy maps only onto a redundancy component");
                if (rp->degree != p.degree)
                    return mismatch("degree differs");
                if (rp->mode != p.mode)
                    return mismatch("redundancy mode differs");
                if (!same(rp->replica_mtti, mtti))
                    return mismatch("replica_mtti differs from the scenario's effective mtti");
                return std::nullopt;
            },
            [&](const ReconfigurationPolicy& p) -> std::optional<std::string> {
                const auto* rc = std::get_if<ReconfigurationParams>(&c.pattern);
                if (!rc)
                    return mismatch("reconfiguration policy maps only onto a reconfiguration component");
                if (rc->component_count != p.components)
                    return mismatch("component_count differs from policy components");
                if (!rc->component_reliabilities.empty())
                    return mismatch("component_reliabilities must be left to the event model");
                if (!same(system.event_model.mtti(), mtti))
                    return mismatch("system mtti differs from the scenario's effective mtti");
                return std::nullopt;
            },
        },
        scenario.policy);
}

ReportDocument cmd_eval(const ConfigDocument& doc, const CommandOptions& opts)
{
    ReportDocument r = start_report("eval", doc, opts, false);
    for (const char* c : {"eval_time", "system_reliability", "system_reliability_clamped", "total_overhead"})
        r.columns.push_back(c);
    for (const Component& c : doc.system.components)
        for (const char* suffix : {".pattern", ".time", ".time_kind", ".reliability"})
            r.columns.push_back(c.name + suffix);
    r.columns.push_back("status");

    const std::vector<double> grid = sweep_grid(doc);
    const std::vector<ConfigDocument> points = expand_sweep(doc);

    for (std::size_t i = 0; i < points.size(); ++i) {
        const ConfigDocument& point = points[i];
        std::vector<Cell> row = start_row(i, doc, grid);
        EvaluationOptions eo{opts.convention.value_or(point.convention), point.reconfiguration_mode};
        try {
            const EvaluationReport er = evaluate_system(point.system, point.eval_time, eo);
            row.emplace_back(point.eval_time);
            row.emplace_back(er.system_reliability.value);
            bool clamped = er.system_reliability.clamped;
            for (const auto& [name, out] : er.per_component)
                clamped = clamped || (out.reliability && out.reliability->clamped);
            row.emplace_back(static_cast<long long>(clamped));
            row.emplace_back(er.total_overhead);
            for (std::size_t k = 0; k < er.per_component.size(); ++k) {
                const ModelOutput& out = er.per_component[k].second;
                row.emplace_back(pattern_tag(point.system.components[k].pattern));
                row.emplace_back(out.time_estimate);
                row.emplace_back(std::string(kind_name(out.kind)));
                if (out.reliability)
                    row.emplace_back(out.reliability->value);
                else
                    row.emplace_back(std::monostate{});
            }
            row.emplace_back(std::string("ok"));
            for (const std::string& d : er.diagnostics)
                r.add_diagnostic(d);
        } catch (const DomainError& e) {
            row.resize(doc.sweep ? 2 : 1);
            finish_error_row(r, row, e.what());
        }
        r.rows.push_back(std::move(row));
    }
    return r;
}

ReportDocument cmd_simulate(const ConfigDocument& doc, const CommandOptions& opts)
{
    if (!doc.scenario)
        throw UsageError("simulate needs a scenario section");
    if (opts.trials < 1)
        throw UsageError("trials must be at least 1");

    ReportDocument r = start_report("simulate", doc, opts, true);
    for (const char* c : {"policy", "effective_mtti", "trials", "completed", "completion_fraction", "errors",
                                 "mean_time", "mean_time_stderr", "mean_events", "mean_wasted_work"})
        r.columns.push_back(c);
    for (double t : doc.report_times) {
        r.columns.push_back("reliability@" + time_label(t));
        r.columns.push_back("reliability_stderr@" + time_label(t));
        r.columns.push_back("completed_by@" + time_label(t));
    }
    r.columns.push_back("status");

    const std::vector<double> grid = sweep_grid(doc);
    const std::vector<ConfigDocument> points = expand_sweep(doc);

    for (std::size_t i = 0; i < points.size(); ++i) {
        const SimScenario& s = *points[i].scenario;
        std::vector<Cell> row = start_row(i, doc, grid);
        try {
            const EnsembleStats e = run_ensemble(s, opts.trials, opts.seed, opts.workers);
            row.emplace_back(policy_tag(s.policy));
            row.emplace_back(s.effective_mtti());
            row.emplace_back(e.trials);
            row.emplace_back(e.completed);
            row.emplace_back(static_cast<double>(e.completed) / static_cast<double>(e.trials));
            row.emplace_back(e.errors);
            auto opt = [](const std::optional<double>& v) -> Cell {
                if (v)
                    return *v;
                return std::monostate{};
            };
            row.push_back(opt(e.mean_time));
            row.push_back(opt(e.mean_time_stderr));
            row.emplace_back(e.mean_events);
            row.emplace_back(e.mean_wasted_work);
            for (double t : points[i].report_times) {
                const double rel = empirical_reliability(e, t).value;
                row.emplace_back(rel);
                row.emplace_back(fraction_stderr(e, rel));
                row.emplace_back(e.completion_fraction_by(t));
            }
            row.emplace_back(std::string(e.errors ? "trial errors" : "ok"));
            if (e.errors)
                r.has_row_errors = true;

            if (opts.trace) {
                std::vector<TraceEvent> events;
                (void)run_trial(s, trial_seed(opts.seed, 0), &events);
                write_trace_jsonl(*opts.trace, events, {{"row", static_cast<long long>(i)}, {"trial", 0}});
            }
        } catch (const DomainError& e) {
            row.resize(doc.sweep ? 2 : 1);
            finish_error_row(r, row, e.what());
        }
        r.rows.push_back(std::move(row));
    }
    r.add_diagnostic("scenario: mtti scope " + to_string(doc.scenario->mtti_scope));
    return r;
}

ReportDocument cmd_compare(const ConfigDocument& doc, const CommandOptions& opts)
{
    if (!doc.scenario)
        throw UsageError("compare needs a scenario section");
    if (opts.trials < 1)
        throw UsageError("trials must be at least 1");
    if (auto why = mapping_mismatch(doc.system, *doc.scenario))
        throw UsageError("incompatible system and scenario: " + *why);

    ReportDocument r = start_report("compare", doc, opts, true);
    for (const char* c : {"t", "analytic_literal", "analytic_survival", "empirical", "empirical_stderr",
                                 "abs_gap_literal", "rel_gap_literal", "abs_gap_survival", "rel_gap_survival"})
        r.columns.push_back(c);
    r.columns.push_back("status");

    const std::vector<double> grid = sweep_grid(doc);
    const std::vector<ConfigDocument> points = expand_sweep(doc);

    for (std::size_t i = 0; i < points.size(); ++i) {
        const ConfigDocument& point = points[i];
        std::vector<Cell> base = start_row(i, doc, grid);
        try {
            if (auto why = mapping_mismatch(point.system, *point.scenario))
                throw DomainError(*why);
            const EnsembleStats e = run_ensemble(*point.scenario, opts.trials, opts.seed, opts.workers);
            for (double t : point.report_times) {
                const EvaluationReport lit =
                    evaluate_system(point.system, t, {Convention::Literal, point.reconfiguration_mode});
                const EvaluationReport surv =
                    evaluate_system(point.system, t, {Convention::Survival, point.reconfiguration_mode});
                const double emp = empirical_reliability(e, t).value;
                const double al = lit.system_reliability.value;
                const double as = surv.system_reliability.value;

                std::vector<Cell> row = base;
                row.emplace_back(t);
                row.emplace_back(al);
                row.emplace_back(as);
                row.emplace_back(emp);
                row.emplace_back(fraction_stderr(e, emp));
                auto rel = [&](double gap) -> Cell {
                    if (emp == 0.0)
                        return std::monostate{};
                    return gap / emp;
                };
                row.emplace_back(std::abs(al - emp));
                row.push_back(rel(std::abs(al - emp)));
                row.emplace_back(std::abs(as - emp));
                row.push_back(rel(std::abs(as - emp)));
                row.emplace_back(std::string("ok"));
                r.rows.push_back(std::move(row));
                for (const std::string& d : lit.diagnostics)
                    r.add_diagnostic(d);
                for (const std::string& d : surv.diagnostics)
                    r.add_diagnostic(d);
            }
        } catch (const DomainError& e) {
            base.resize(doc.sweep ? 2 : 1);
            finish_error_row(r, base, e.what());
            r.rows.push_back(std::move(base));
        }
    }
    return r;
}

} // namespace resil
