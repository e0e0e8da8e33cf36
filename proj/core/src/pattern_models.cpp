#include "resil/pattern_models.hpp"

#include <cmath>
#include <string>

namespace resil {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw DomainError(what);
}

void require_nonnegative(double v, const char* name)
{
    require(v >= 0.0 && std::isfinite(v), std::string(name) + " must be finite and nonnegative");
}

const char* convention_note(Convention c)
{
    return c == Convention::Literal
        ? "literal convention: reliability evaluated as 1 - e^(-x/eta) as printed"
        : "survival convention: reliability evaluated as e^(-x/eta)";
}

// o + delta / r with delta already resolved.
double failure_free_time(const CheckpointParams& p, double delta)
{
    return p.regular_time + delta / p.checkpoint_rate;
}

Probability exposure_reliability(double exposure, const EventModel& m, Convention c)
{
    return exponential_reliability(exposure, m, c);
}

} // namespace

std::string to_string(ReconfigurationMode m)
{
    return m == ReconfigurationMode::Literal ? "literal" : "corrected";
}

ReconfigurationMode reconfiguration_mode_from_string(const std::string& s)
{
    if (s == "literal")
        return ReconfigurationMode::Literal;
    if (s == "corrected")
        return ReconfigurationMode::Corrected;
    throw DomainError("unknown reconfiguration mode '" + s + "' (expected literal|corrected)");
}

std::string to_string(RecoveryMode m)
{
    return m == RecoveryMode::Checkpointing ? "checkpointing" : "message_logging";
}

RecoveryMode recovery_mode_from_string(const std::string& s)
{
    if (s == "checkpointing")
        return RecoveryMode::Checkpointing;
    if (s == "message_logging")
        return RecoveryMode::MessageLogging;
    throw DomainError("unknown recovery mode '" + s + "' (expected checkpointing|message_logging)");
}

std::string to_string(RedundancyMode m)
{
    return m == RedundancyMode::Space ? "space" : "time";
}

RedundancyMode redundancy_mode_from_string(const std::string& s)
{
    if (s == "space")
        return RedundancyMode::Space;
    if (s == "time")
        return RedundancyMode::Time;
    throw DomainError("unknown redundancy mode '" + s + "' (expected space|time)");
}

ModelOutput diagnosis_overhead(const DiagnosisParams& p)
{
    require_nonnegative(p.base_time, "base_time");
    require_nonnegative(p.inference_time, "inference_time");
    require(p.observed_params >= 1, "observed_params must be at least 1");
    require(p.polling_frequency > 0.0 && std::isfinite(p.polling_frequency),
            "polling_frequency must be positive");

    ModelOutput out;
    out.time_estimate = p.base_time + p.observed_params * (p.inference_time / p.polling_frequency);
    out.notes.emplace_back("diagnosis: no reliability improvement");
    return out;
}

ModelOutput reconfiguration_performance(const ReconfigurationParams& p, ReconfigurationMode mode)
{
    require(p.component_count >= 2, "component_count must be at least 2");
    require(p.progress_fraction >= 0.0 && p.progress_fraction <= 1.0,
            "progress_fraction must lie in [0,1] (normalized mission time)");
    require_nonnegative(p.reconfig_downtime, "reconfig_downtime");

    const double n = p.component_count;
    const double factor = mode == ReconfigurationMode::Literal ? (n - 1.0) / n : n / (n - 1.0);

    ModelOutput out;
    out.time_estimate = p.progress_fraction + (1.0 - p.progress_fraction) * factor + p.reconfig_downtime;
    out.notes.push_back(mode == ReconfigurationMode::Literal
                            ? "reconfiguration: literal (n-1)/n factor on remaining work"
                            : "reconfiguration: corrected n/(n-1) degraded-capacity factor");
    return out;
}

Probability reconfiguration_reliability(std::span<const Probability> component_reliabilities)
{
    require(!component_reliabilities.empty(), "reconfiguration_reliability needs at least one component");
    double all_fail = 1.0;
    for (const Probability& r : component_reliabilities) {
        require(r.value >= 0.0 && r.value <= 1.0, "component reliability outside [0,1]");
        all_fail *= 1.0 - r.value;
    }
    return {1.0 - all_fail, false};
}

double effective_checkpoint_cost(const CheckpointParams& p)
{
    require_nonnegative(p.regular_time, "regular_time");
    require_nonnegative(p.recovery_cost, "recovery_cost");
    require(p.checkpoint_rate > 0.0 && std::isfinite(p.checkpoint_rate),
            "checkpoint_rate must be positive");
    if (p.mode == RecoveryMode::Checkpointing) {
        require_nonnegative(p.checkpoint_cost, "checkpoint_cost");
        return p.checkpoint_cost;
    }
    require(p.message_count.has_value() && p.log_time_per_message.has_value(),
            "message_logging requires message_count and log_time_per_message");
    require(*p.message_count >= 0, "message_count must be nonnegative");
    require_nonnegative(*p.log_time_per_message, "log_time_per_message");
    return static_cast<double>(*p.message_count) * *p.log_time_per_message;
}

ModelOutput rollback_failure_free_time(const CheckpointParams& p)
{
    require(p.mode == RecoveryMode::Checkpointing, "rollback recovery requires checkpointing mode");
    ModelOutput out;
    out.time_estimate = failure_free_time(p, effective_checkpoint_cost(p));
    return out;
}

ModelOutput rollback_with_failures(const CheckpointParams& p, Convention c)
{
    require(p.mode == RecoveryMode::Checkpointing, "rollback recovery requires checkpointing mode");
    const double t_ff = failure_free_time(p, effective_checkpoint_cost(p));
    const double exposure = t_ff + p.recovery_cost;

    ModelOutput out;
    out.time_estimate = exposure / p.event_model.mtti();
    out.kind = EstimateKind::Ratio;
    out.reliability = exposure_reliability(exposure, p.event_model, c);
    out.notes.emplace_back("rollback: time estimate (T_FF + gamma)/eta is a dimensionless ratio");
    out.notes.emplace_back(convention_note(c));
    return out;
}

Probability rollforward_reliability(const CheckpointParams& p, Convention c)
{
    const double delta = effective_checkpoint_cost(p);
    const double t_ff = failure_free_time(p, delta);
    // message logging replaces gamma by the logging interval M * t_logging
    const double exposure = t_ff + (p.mode == RecoveryMode::MessageLogging ? delta : p.recovery_cost);
    return exposure_reliability(exposure, p.event_model, c);
}

ModelOutput rollforward_time(const CheckpointParams& p, Convention c)
{
    const double t_ff = failure_free_time(p, effective_checkpoint_cost(p));

    ModelOutput out;
    out.time_estimate = (t_ff + p.recovery_cost) / p.event_model.mtti();
    out.kind = EstimateKind::Ratio;
    out.reliability = rollforward_reliability(p, c);
    if (p.mode == RecoveryMode::Checkpointing)
        out.notes.emplace_back("rollback: time estimate (T_FF + gamma)/eta is a dimensionless ratio");
    else
        out.notes.emplace_back("roll-forward: message logging, delta = M * t_logging; "
                               "time estimate (T_FF + gamma)/eta is a dimensionless ratio");
    out.notes.emplace_back(convention_note(c));
    return out;
}

ModelOutput redundancy_time(const RedundancyParams& p)
{
    require(p.replicated_fraction >= 0.0 && p.replicated_fraction <= 1.0,
            "replicated_fraction must lie in [0,1]");
    require(p.degree >= 1, "degree must be at least 1");
    require(p.serial_time > 0.0 && std::isfinite(p.serial_time), "serial_time must be positive");
    require_nonnegative(p.voting_time, "voting_time");

    const double beta = p.mode == RedundancyMode::Space ? 1.0 : static_cast<double>(p.degree);
    const double a = p.replicated_fraction;

    ModelOutput out;
    out.time_estimate = p.serial_time * ((1.0 - a) + beta * a) + p.voting_time;
    return out;
}

Probability redundancy_reliability(double t, const RedundancyParams& p, std::vector<std::string>* notes)
{
    require(t >= 0.0, "time must be nonnegative");
    require(p.degree >= 1, "degree must be at least 1");
    require(p.replica_mtti > 0.0 && std::isfinite(p.replica_mtti), "replica_mtti must be positive");

    const Probability r = Probability::clamp(1.0 - std::pow(t / p.replica_mtti, p.degree));
    if (r.clamped && notes)
        notes->push_back("redundancy: 1 - (t/lambda)^d left [0,1] (t > lambda); clamped");
    return r;
}

ExclusiveSuccess nversion_exclusive_success(std::span<const Probability> version_success)
{
    require(version_success.size() >= 2, "n-version design needs at least 2 versions");
    for (const Probability& p : version_success)
        require(p.value >= 0.0 && p.value <= 1.0, "version success probability outside [0,1]");

    ExclusiveSuccess out;
    out.per_version.reserve(version_success.size());
    double total = 0.0;
    for (std::size_t k = 0; k < version_success.size(); ++k) {
        double v = version_success[k].value;
        for (std::size_t j = 0; j < version_success.size(); ++j)
            if (j != k)
                v *= 1.0 - version_success[j].value;
        out.per_version.push_back({v, false});
        total += v;
    }
    // disjoint events; the sum can only exceed 1 by rounding
    out.total = Probability::clamp(total);
    out.total.clamped = false;
    return out;
}

Probability nversion_failure_density(Probability exclusive_sum, Probability voter_fail)
{
    require(exclusive_sum.value >= 0.0 && exclusive_sum.value <= 1.0, "P(A) outside [0,1]");
    require(voter_fail.value >= 0.0 && voter_fail.value <= 1.0, "P(V) outside [0,1]");
    return Probability::clamp((1.0 - voter_fail.value) * exclusive_sum.value + voter_fail.value);
}

Probability nversion_reliability(double t, const NVersionParams& p, Convention c,
                                 std::vector<std::string>* notes)
{
    require(t >= 0.0, "time must be nonnegative");
    require(p.probabilities.size() >= 2, "n-version design needs at least 2 versions");

    Probability exclusive_sum;
    if (p.input == NVersionInput::VersionSuccess) {
        exclusive_sum = nversion_exclusive_success(p.probabilities).total;
    } else {
        double s = 0.0;
        for (const Probability& a : p.probabilities) {
            require(a.value >= 0.0 && a.value <= 1.0, "P(A_k) outside [0,1]");
            s += a.value;
        }
        exclusive_sum = Probability::clamp(s);
        if (exclusive_sum.clamped && notes)
            notes->push_back("n-version: supplied P(A_k) sum exceeds 1; clamped");
    }

    const Probability q = nversion_failure_density(exclusive_sum, p.voter_failure_prob);
    // The printed F(t) = e^(-t/eta) is the survival form, opposite to the
    // 1 - e^(-t/eta) of the base event model.
    const double f = c == Convention::Literal ? survival_probability(t, p.event_model).value
                                              : interrupt_probability(t, p.event_model).value;
    if (notes) {
        notes->push_back(c == Convention::Literal
                             ? "n-version: literal F(t) = e^(-t/eta), inconsistent with the base "
                               "event model's 1 - e^(-t/eta)"
                             : "n-version: survival convention, F(t) = 1 - e^(-t/eta)");
    }
    Probability r = Probability::clamp(1.0 - q.value * f);
    r.clamped = r.clamped || exclusive_sum.clamped;
    return r;
}

} // namespace resil
