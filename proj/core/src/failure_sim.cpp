#include "resil/failure_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "resil/event_model.hpp"
#include "resil/random.hpp"

namespace resil {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw DomainError(what);
}

// Exponential clock shared by all policies. An infinite mtti never fires.
class FaultClock {
public:
    FaultClock(std::uint64_t seed, double mtti) : rng_(seed), mtti_(mtti) {}

    double draw(double now, double mtti)
    {
        if (std::isinf(mtti))
            return kInf;
        return now + interarrival_from_uniform(open_unit(rng_()), mtti);
    }
    double draw(double now) { return draw(now, mtti_); }

private:
    RandomStream rng_;
    double mtti_;
};

class Tracer {
public:
    explicit Tracer(std::vector<TraceEvent>* sink) : sink_(sink) {}
    void operator()(double t, const char* kind, std::string detail = {}) const
    {
        if (sink_)
            sink_->push_back({t, kind, std::move(detail)});
    }

private:
    std::vector<TraceEvent>* sink_;
};

struct TrialState {
    TrialOutcome out;
    double horizon;
    Tracer trace;

    void fault(double t, std::string detail = {})
    {
        ++out.events;
        if (!out.first_fault_time)
            out.first_fault_time = t;
        trace(t, "fault", std::move(detail));
    }
    TrialOutcome complete(double t)
    {
        out.completed = true;
        out.completion_time = t;
        trace(t, "complete");
        return out;
    }
    TrialOutcome fail(double t, const char* why)
    {
        out.completed = false;
        out.failure_time = t;
        trace(t, "fail", why);
        return out;
    }
};

std::size_t segment_count(double work, double interval)
{
    const double q = work / interval;
    const double k = std::round(q);
    if (k >= 1.0 && std::abs(q - k) <= 1e-9 * std::max(1.0, q))
        return static_cast<std::size_t>(k);
    return static_cast<std::size_t>(std::ceil(q));
}

TrialOutcome run_none(const SimScenario& s, FaultClock& clock, TrialState& st)
{
    const double fault = clock.draw(0.0);
    if (fault < s.work && fault <= st.horizon) {
        st.fault(fault);
        st.out.wasted_work = fault;
        return st.fail(fault, "fault");
    }
    if (s.work <= st.horizon)
        return st.complete(s.work);
    return st.fail(st.horizon, "cutoff");
}

TrialOutcome run_checkpoint(const SimScenario& s, const CheckpointPolicy& p, FaultClock& clock,
                            TrialState& st)
{
    const std::size_t nseg = segment_count(s.work, p.interval);
    double now = 0.0;
    double next_fault = clock.draw(now);

    for (std::size_t i = 0; i < nseg;) {
        const double begin = static_cast<double>(i) * p.interval;
        const double end = i + 1 == nseg ? s.work : static_cast<double>(i + 1) * p.interval;
        const bool last = i + 1 == nseg;
        const double phase_end = now + (end - begin) + (last ? 0.0 : p.cost);

        if (next_fault < phase_end && next_fault <= st.horizon) {
            st.fault(next_fault, "segment " + std::to_string(i));
            st.out.wasted_work += next_fault - now;
            now = next_fault;
            next_fault = clock.draw(now);
            // recovery, restarted by any fault that lands inside it
            for (;;) {
                st.trace(now, "recovery_start");
                const double rec_end = now + p.recovery;
                if (next_fault < rec_end && next_fault <= st.horizon) {
                    st.fault(next_fault, "during recovery");
                    st.out.wasted_work += next_fault - now;
                    now = next_fault;
                    next_fault = clock.draw(now);
                    continue;
                }
                if (rec_end > st.horizon)
                    return st.fail(st.horizon, "cutoff");
                st.out.wasted_work += p.recovery;
                now = rec_end;
                st.trace(now, "recovery_done");
                break;
            }
            continue;
        }
        if (phase_end > st.horizon)
            return st.fail(st.horizon, "cutoff");
        now = phase_end;
        if (!last)
            st.trace(now, "checkpoint", "segment " + std::to_string(i));
        ++i;
    }
    return st.complete(now);
}

TrialOutcome run_replication_space(const SimScenario& s, const ReplicationPolicy& p,
                                   FaultClock& clock, TrialState& st)
{
    const double mtti = s.effective_mtti();
    const double required = s.work + p.voting_cost;

    std::vector<std::pair<double, int>> deaths;
    for (int r = 0; r < p.degree; ++r)
        deaths.emplace_back(clock.draw(0.0, mtti), r);
    std::sort(deaths.begin(), deaths.end());

    // fewer than k replicas alive once the (d-k+1)-th one has died
    const double threshold_time = deaths[static_cast<std::size_t>(p.degree - p.survival_threshold)].first;
    const double end = std::min({required, threshold_time, st.horizon});

    for (const auto& [when, replica] : deaths) {
        if (when > end || when >= required)
            break;
        st.fault(when, "replica " + std::to_string(replica));
        st.out.wasted_work += std::min(when, s.work);
    }
    if (threshold_time < required && threshold_time <= st.horizon)
        return st.fail(threshold_time, "below survival threshold");
    if (required > st.horizon)
        return st.fail(st.horizon, "cutoff");
    st.trace(s.work, "vote");
    return st.complete(required);
}

TrialOutcome run_replication_time(const SimScenario& s, const ReplicationPolicy& p,
                                  FaultClock& clock, TrialState& st)
{
    const double total = p.degree * s.work + p.voting_cost;
    const double limit = std::min(total, st.horizon);

    int corrupt = 0;
    double next_fault = clock.draw(0.0);
    for (int run = 0; run < p.degree; ++run) {
        const double end = (run + 1) * s.work;
        bool hit = false;
        while (next_fault < end && next_fault <= limit) {
            st.fault(next_fault, "execution " + std::to_string(run));
            hit = true;
            next_fault = clock.draw(next_fault);
        }
        if (end > st.horizon)
            return st.fail(st.horizon, "cutoff");
        if (hit) {
            ++corrupt;
            st.out.wasted_work += s.work;
        }
        st.trace(end, "execution_done", std::to_string(run) + (hit ? " corrupt" : " clean"));
    }
    if (total > st.horizon)
        return st.fail(st.horizon, "cutoff");
    if (p.degree - corrupt < p.survival_threshold)
        return st.fail(total, "vote failed");
    return st.complete(total);
}

TrialOutcome run_reconfiguration(const SimScenario& s, const ReconfigurationPolicy& p,
                                 FaultClock& clock, TrialState& st)
{
    const double unit_mtti = s.effective_mtti();
    int active = p.components;
    double remaining = s.work;
    double now = 0.0;
    // the next failure among `active` independent units
    auto draw = [&] { return clock.draw(now, unit_mtti / active); };
    double next_fault = draw();

    auto lose_unit = [&](double when) {
        st.fault(when, "unit lost, " + std::to_string(active - 1) + " active");
        now = when;
        --active;
        if (active >= p.min_components)
            next_fault = draw();
    };

    for (;;) {
        const double speed = static_cast<double>(active) / p.components;
        const double finish = now + remaining / speed;
        if (next_fault < finish && next_fault <= st.horizon) {
            remaining -= (next_fault - now) * speed;
            lose_unit(next_fault);
            if (active < p.min_components)
                return st.fail(now, "below minimum components");
            // downtime, restarted by further failures
            for (;;) {
                st.trace(now, "reconfigure", std::to_string(active) + " active");
                const double up = now + p.downtime;
                if (next_fault < up && next_fault <= st.horizon) {
                    st.out.wasted_work += next_fault - now;
                    lose_unit(next_fault);
                    if (active < p.min_components)
                        return st.fail(now, "below minimum components");
                    continue;
                }
                if (up > st.horizon)
                    return st.fail(st.horizon, "cutoff");
                st.out.wasted_work += p.downtime;
                now = up;
                break;
            }
            continue;
        }
        if (finish > st.horizon)
            return st.fail(st.horizon, "cutoff");
        return st.complete(finish);
    }
}

} // namespace

std::string policy_tag(const SimPolicy& p)
{
    return std::visit(Overloaded{
                          [](const NoPolicy&) { return "none"; },
                          [](const CheckpointPolicy&) { return "checkpoint"; },
                          [](const ReplicationPolicy&) { return "replication"; },
                          [](const ReconfigurationPolicy&) { return "reconfiguration"; },
                      },
                      p);
}

std::string to_string(MttiScope s)
{
    return s == MttiScope::System ? "system" : "per_node";
}

MttiScope mtti_scope_from_string(const std::string& s)
{
    if (s == "system")
        return MttiScope::System;
    if (s == "per_node")
        return MttiScope::PerNode;
    throw DomainError("unknown mtti scope '" + s + "' (expected system|per_node)");
}

double SimScenario::effective_mtti() const
{
    return mtti_scope == MttiScope::PerNode ? fault_mtti / node_count : fault_mtti;
}

void validate(const SimScenario& s)
{
    require(s.work > 0.0 && std::isfinite(s.work), "work must be positive and finite");
    require(s.node_count >= 1, "node_count must be at least 1");
    require(s.fault_mtti > 0.0, "fault_mtti must be positive");
    require(s.max_sim_time > 0.0, "max_sim_time must be positive");
    if (s.deadline)
        require(*s.deadline > 0.0, "deadline must be positive");
    std::visit(Overloaded{
                   [](const NoPolicy&) {},
                   [](const CheckpointPolicy& p) {
                       require(p.interval > 0.0 && std::isfinite(p.interval),
                               "checkpoint interval must be positive");
                       require(p.cost >= 0.0 && std::isfinite(p.cost), "checkpoint cost must be nonnegative");
                       require(p.recovery >= 0.0 && std::isfinite(p.recovery),
                               "recovery cost must be nonnegative");
                   },
                   [](const ReplicationPolicy& p) {
                       require(p.degree >= 1, "replication degree must be at least 1");
                       require(p.survival_threshold >= 1 && p.survival_threshold <= p.degree,
                               "survival_threshold must lie in [1, degree]");
                       require(p.voting_cost >= 0.0 && std::isfinite(p.voting_cost),
                               "voting cost must be nonnegative");
                   },
                   [](const ReconfigurationPolicy& p) {
                       require(p.components >= 1, "components must be at least 1");
                       require(p.min_components >= 1 && p.min_components <= p.components,
                               "min_components must lie in [1, components]");
                       require(p.downtime >= 0.0 && std::isfinite(p.downtime), "downtime must be nonnegative");
                   },
               },
               s.policy);
}

TrialOutcome run_trial(const SimScenario& s, std::uint64_t seed, std::vector<TraceEvent>* trace)
{
    validate(s);
    FaultClock clock(seed, s.effective_mtti());
    TrialState st{{}, std::min(s.deadline.value_or(kInf), s.max_sim_time), Tracer(trace)};
    st.trace(0.0, "start", policy_tag(s.policy));

    return std::visit(Overloaded{
                          [&](const NoPolicy&) { return run_none(s, clock, st); },
                          [&](const CheckpointPolicy& p) { return run_checkpoint(s, p, clock, st); },
                          [&](const ReplicationPolicy& p) {
                              return p.mode == RedundancyMode::Space
                                  ? run_replication_space(s, p, clock, st)
                                  : run_replication_time(s, p, clock, st);
                          },
                          [&](const ReconfigurationPolicy& p) { return run_reconfiguration(s, p, clock, st); },
                      },
                      s.policy);
}

void write_trace_jsonl(std::ostream& os, const std::vector<TraceEvent>& events,
                       const std::vector<std::pair<std::string, long long>>& labels)
{
    for (const TraceEvent& e : events) {
        nlohmann::ordered_json j;
        for (const auto& [k, v] : labels)
            j[k] = v;
        j["time"] = e.time;
        j["kind"] = e.kind;
        j["detail"] = e.detail;
        os << j.dump() << '\n';
    }
}

double EnsembleStats::completion_fraction_by(double t) const
{
    if (trials == 0)
        return 0.0;
    const auto n = std::upper_bound(completion_times.begin(), completion_times.end(), t) -
        completion_times.begin();
    return static_cast<double>(n) / static_cast<double>(trials);
}

double EnsembleStats::survival_fraction(double t) const
{
    if (trials == 0)
        return 1.0;
    const auto n = std::upper_bound(failure_times.begin(), failure_times.end(), t) - failure_times.begin();
    return 1.0 - static_cast<double>(n) / static_cast<double>(trials);
}

unsigned default_workers()
{
    if (const char* env = std::getenv("RESIL_MAX_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

EnsembleStats run_ensemble(const SimScenario& s, long long trials, std::uint64_t master_seed,
                           unsigned workers)
{
    require(trials >= 1, "trials must be at least 1");
    validate(s);
    if (workers == 0)
        workers = default_workers();
    workers = static_cast<unsigned>(std::min<long long>(workers, trials));

    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
    std::vector<char> failed(static_cast<std::size_t>(trials), 0);

    auto run_range = [&](unsigned w) {
        for (long long i = w; i < trials; i += workers) {
            try {
                outcomes[static_cast<std::size_t>(i)] = run_trial(s, trial_seed(master_seed, static_cast<std::uint64_t>(i)));
            } catch (const std::exception&) {
                failed[static_cast<std::size_t>(i)] = 1;
            }
        }
    };
    if (workers == 1) {
        run_range(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(run_range, w);
    }

    // reduce in trial order so the floating-point sums do not depend on scheduling
    EnsembleStats e;
    e.seed = master_seed;
    e.trials = trials;
    double sum_time = 0.0;
    double sum_events = 0.0;
    double sum_wasted = 0.0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (failed[i]) {
            ++e.errors;
            continue;
        }
        const TrialOutcome& o = outcomes[i];
        sum_events += static_cast<double>(o.events);
        sum_wasted += o.wasted_work;
        if (o.first_fault_time)
            e.first_fault_times.push_back(*o.first_fault_time);
        if (o.completed) {
            ++e.completed;
            sum_time += *o.completion_time;
            e.completion_times.push_back(*o.completion_time);
        } else if (o.failure_time) {
            e.failure_times.push_back(*o.failure_time);
        }
    }
    const long long ok = trials - e.errors;
    if (ok > 0) {
        e.mean_events = sum_events / static_cast<double>(ok);
        e.mean_wasted_work = sum_wasted / static_cast<double>(ok);
    }
    if (e.completed > 0) {
        const double mean = sum_time / static_cast<double>(e.completed);
        e.mean_time = mean;
        if (e.completed > 1) {
            double ss = 0.0;
            for (double t : e.completion_times)
                ss += (t - mean) * (t - mean);
            const double var = ss / static_cast<double>(e.completed - 1);
            e.mean_time_stderr = std::sqrt(var / static_cast<double>(e.completed));
        }
    }
    std::sort(e.completion_times.begin(), e.completion_times.end());
    std::sort(e.failure_times.begin(), e.failure_times.end());
    std::sort(e.first_fault_times.begin(), e.first_fault_times.end());
    return e;
}

Probability empirical_reliability(const EnsembleStats& e, double t)
{
    if (!(t >= 0.0))
        throw DomainError("time must be nonnegative");
    return Probability::clamp(e.survival_fraction(t));
}

double fraction_stderr(const EnsembleStats& e, double fraction)
{
    if (e.trials == 0)
        return 0.0;
    return std::sqrt(fraction * (1.0 - fraction) / static_cast<double>(e.trials));
}

} // namespace resil
