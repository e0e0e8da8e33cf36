#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resil/event_model.hpp"
#include "resil/probability.hpp"

// Closed-form performance and reliability evaluators, one per resilience
// pattern. Each function evaluates its expression as printed; where the
// printed form is dimensionally odd or disagrees with the exponential event
// model, the result carries a note instead of a silent repair.

namespace resil {

/// Whether `time_estimate` is a time or a dimensionless ratio.
enum class EstimateKind { Time, Ratio };

struct ModelOutput {
    double time_estimate = 0.0;
    EstimateKind kind = EstimateKind::Time;
    std::optional<Probability> reliability;
    std::vector<std::string> notes;
};

// ---------------------------------------------------------------------------
// Fault diagnosis

struct DiagnosisParams {
    double base_time = 0.0;
    int observed_params = 1;
    double inference_time = 0.0;
    double polling_frequency = 1.0;

    bool operator==(const DiagnosisParams&) const = default;
};

/// T0 + n * (t_inference / beta). Diagnosis does not improve reliability, so
/// the output has none.
ModelOutput diagnosis_overhead(const DiagnosisParams& p);

// ---------------------------------------------------------------------------
// Reconfiguration

/// `Literal` uses the printed (n-1)/n factor on the remaining work.
/// `Corrected` slows the remaining work by n/(n-1), matching a degraded
/// capacity of n-1 components.
enum class ReconfigurationMode { Literal, Corrected };

std::string to_string(ReconfigurationMode m);
ReconfigurationMode reconfiguration_mode_from_string(const std::string& s);

struct ReconfigurationParams {
    double progress_fraction = 0.0; ///< normalized time before the event, in [0,1]
    int component_count = 2;
    double reconfig_downtime = 0.0; ///< normalized
    std::vector<Probability> component_reliabilities;

    bool operator==(const ReconfigurationParams&) const = default;
};

ModelOutput reconfiguration_performance(const ReconfigurationParams& p,
                                        ReconfigurationMode mode = ReconfigurationMode::Literal);

/// 1 - prod(1 - R_i) over independent components.
Probability reconfiguration_reliability(std::span<const Probability> component_reliabilities);

// ---------------------------------------------------------------------------
// Rollback and roll-forward recovery

enum class RecoveryMode { Checkpointing, MessageLogging };

std::string to_string(RecoveryMode m);
RecoveryMode recovery_mode_from_string(const std::string& s);

struct CheckpointParams {
    double regular_time = 0.0;    ///< o
    double checkpoint_cost = 0.0; ///< delta
    double checkpoint_rate = 1.0; ///< r
    double recovery_cost = 0.0;   ///< gamma
    EventModel event_model{1.0};
    RecoveryMode mode = RecoveryMode::Checkpointing;
    std::optional<long long> message_count;           ///< M, message logging only
    std::optional<double> log_time_per_message;       ///< t_logging, message logging only

    bool operator==(const CheckpointParams&) const = default;
};

/// Validates invariants and returns the effective delta: the checkpoint cost,
/// or M * t_logging under message logging.
double effective_checkpoint_cost(const CheckpointParams& p);

/// o + delta / r.
ModelOutput rollback_failure_free_time(const CheckpointParams& p);

/// (T_FF + gamma) / eta as a ratio, with reliability 1 - e^(-(T_FF+gamma)/eta)
/// under the literal convention and its complement under the survival one.
ModelOutput rollback_with_failures(const CheckpointParams& p, Convention c = Convention::Literal);

/// Same arithmetic as rollback; message logging substitutes delta = M * t_logging.
/// The output's reliability is `rollforward_reliability`.
ModelOutput rollforward_time(const CheckpointParams& p, Convention c = Convention::Literal);

Probability rollforward_reliability(const CheckpointParams& p, Convention c = Convention::Literal);

// ---------------------------------------------------------------------------
// Redundancy

enum class RedundancyMode { Space, Time };

std::string to_string(RedundancyMode m);
RedundancyMode redundancy_mode_from_string(const std::string& s);

struct RedundancyParams {
    double serial_time = 1.0;         ///< T_S
    double replicated_fraction = 0.0; ///< share of operation under replication
    int degree = 1;
    RedundancyMode mode = RedundancyMode::Space;
    double voting_time = 0.0;         ///< T_MV
    double replica_mtti = 1.0;        ///< lambda

    bool operator==(const RedundancyParams&) const = default;
};

/// T_S * ((1 - A) + beta * A) + T_MV with beta = 1 (space) or d (time).
ModelOutput redundancy_time(const RedundancyParams& p);

/// 1 - (t / lambda)^d, clamped to [0,1]. Only meaningful for t <= lambda.
/// `notes`, when given, receives a diagnostic on clamping.
Probability redundancy_reliability(double t, const RedundancyParams& p,
                                   std::vector<std::string>* notes = nullptr);

// ---------------------------------------------------------------------------
// Design diversity (n-version)

/// What the caller supplies in `NVersionParams::probabilities`.
enum class NVersionInput {
    VersionSuccess,   ///< per-version success probabilities, assumed independent
    ExclusiveSuccess, ///< P(A_k) values directly
};

struct NVersionParams {
    NVersionInput input = NVersionInput::VersionSuccess;
    std::vector<Probability> probabilities;
    Probability voter_failure_prob{};
    EventModel event_model{1.0};

    bool operator==(const NVersionParams&) const = default;
};

struct ExclusiveSuccess {
    std::vector<Probability> per_version; ///< P(A_k)
    Probability total;                    ///< P(A), summed over k = 1..n
};

/// P(A_k) = p_k * prod_{j != k} (1 - p_j) for independent versions.
ExclusiveSuccess nversion_exclusive_success(std::span<const Probability> version_success);

/// (1 - P(V)) * P(A) + P(V).
Probability nversion_failure_density(Probability exclusive_sum, Probability voter_fail);

/// 1 - Q * F(t). The literal reading takes F(t) = e^(-t/eta) as printed for
/// this pattern; the survival convention substitutes 1 - e^(-t/eta).
Probability nversion_reliability(double t, const NVersionParams& p,
                                 Convention c = Convention::Literal,
                                 std::vector<std::string>* notes = nullptr);

} // namespace resil
