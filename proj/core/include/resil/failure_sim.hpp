#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "resil/pattern_models.hpp"
#include "resil/probability.hpp"

// Seeded Monte Carlo simulator of a notional system under Poisson faults.
//
// The simulator does not evaluate any closed-form model. Each policy has its
// own operational semantics:
//
//   none             the first fault is terminal.
//   checkpoint       work runs in segments of length `interval`; every segment
//                    except the last is followed by a checkpoint of cost
//                    `cost`. A fault during compute or checkpoint discards the
//                    segment, then `recovery` time is paid (a fault during
//                    recovery restarts it) and the segment is retried.
//   replication      space: `degree` replicas run concurrently, each with its
//                    own fault process; a replica's first fault kills it and
//                    the trial fails once fewer than `survival_threshold`
//                    replicas are alive. time: the work is executed `degree`
//                    times back to back; an execution hit by any fault is
//                    corrupt, and the vote after the last execution succeeds
//                    iff at least `survival_threshold` executions are clean.
//                    Both modes pay `voting_cost` at the end.
//   reconfiguration  `components` units share the work; each active unit
//                    fails independently. A failure removes the unit, stalls
//                    progress for `downtime` (a failure during downtime
//                    restarts it) and scales throughput to active/total. The
//                    trial fails once fewer than `min_components` remain.
//
// A trial ends at completion, at the deadline, or at max_sim_time.

namespace resil {

struct NoPolicy {
    bool operator==(const NoPolicy&) const = default;
};

struct CheckpointPolicy {
    double interval = 1.0; ///< tau
    double cost = 0.0;     ///< delta
    double recovery = 0.0; ///< gamma
    bool operator==(const CheckpointPolicy&) const = default;
};

struct ReplicationPolicy {
    int degree = 2;
    RedundancyMode mode = RedundancyMode::Space;
    int survival_threshold = 1;
    double voting_cost = 0.0;
    bool operator==(const ReplicationPolicy&) const = default;
};

struct ReconfigurationPolicy {
    int components = 2;
    double downtime = 0.0;
    int min_components = 1;
    bool operator==(const ReconfigurationPolicy&) const = default;
};

using SimPolicy = std::variant<NoPolicy, CheckpointPolicy, ReplicationPolicy, ReconfigurationPolicy>;

std::string policy_tag(const SimPolicy& p);

/// Whether `fault_mtti` describes one node (divided by node_count to get the
/// system value) or the whole system.
enum class MttiScope { System, PerNode };

std::string to_string(MttiScope s);
MttiScope mtti_scope_from_string(const std::string& s);

struct SimScenario {
    double work = 1.0;
    int node_count = 1;
    double fault_mtti = std::numeric_limits<double>::infinity();
    MttiScope mtti_scope = MttiScope::System;
    SimPolicy policy = NoPolicy{};
    std::optional<double> deadline;
    double max_sim_time = std::numeric_limits<double>::infinity();

    /// MTTI of one faulting unit (the system, a replica, or a reconfigurable
    /// component): fault_mtti, divided by node_count for per-node scope.
    double effective_mtti() const;

    bool operator==(const SimScenario&) const = default;
};

/// Throws DomainError on the first violated invariant.
void validate(const SimScenario& s);

struct TrialOutcome {
    bool completed = false;
    std::optional<double> completion_time;
    std::optional<double> failure_time; ///< when an unsuccessful trial ended
    std::optional<double> first_fault_time;
    long long events = 0;
    double wasted_work = 0.0;
};

struct TraceEvent {
    double time = 0.0;
    std::string kind;
    std::string detail;
};

/// Deterministic in (s, seed). When `trace` is given every event is appended.
TrialOutcome run_trial(const SimScenario& s, std::uint64_t seed,
                       std::vector<TraceEvent>* trace = nullptr);

/// One JSON object per line: {"time":..,"kind":..,"detail":..} plus any
/// extra integer labels (e.g. row, trial).
void write_trace_jsonl(std::ostream& os, const std::vector<TraceEvent>& events,
                       const std::vector<std::pair<std::string, long long>>& labels = {});

struct EnsembleStats {
    std::uint64_t seed = 0;
    long long trials = 0;
    long long completed = 0;
    long long errors = 0;

    std::optional<double> mean_time;        ///< over completed trials
    std::optional<double> mean_time_stderr; ///< needs at least two completions
    double mean_events = 0.0;
    double mean_wasted_work = 0.0;

    std::vector<double> completion_times;  ///< sorted
    std::vector<double> failure_times;     ///< sorted
    std::vector<double> first_fault_times; ///< sorted

    /// Fraction of all trials that completed by t. Nondecreasing in t.
    double completion_fraction_by(double t) const;

    /// Fraction of all trials with no terminal failure at or before t.
    double survival_fraction(double t) const;
};

/// Worker count used when none is requested: RESIL_MAX_THREADS if set, else
/// the hardware concurrency.
unsigned default_workers();

/// Runs `trials` independent trials; trial i uses trial_seed(master_seed, i).
/// Statistics are reduced in trial order, so the result is bit-identical for
/// any `workers` value (0 selects default_workers()).
EnsembleStats run_ensemble(const SimScenario& s, long long trials, std::uint64_t master_seed,
                           unsigned workers = 0);

/// survival_fraction(t) as a probability.
Probability empirical_reliability(const EnsembleStats& e, double t);

/// Binomial standard error of an empirical fraction over e.trials.
double fraction_stderr(const EnsembleStats& e, double fraction);

} // namespace resil
