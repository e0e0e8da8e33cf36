#pragma once

#include <cmath>
#include <string>

#include "resil/probability.hpp"
#include "resil/random.hpp"

namespace resil {

/// Exponential interrupt process with mean time to interrupt `mtti`.
/// Units are whatever the caller uses consistently; nothing is converted.
class EventModel {
public:
    explicit EventModel(double mtti, std::string description = {});

    double mtti() const noexcept { return mtti_; }
    double rate() const noexcept { return 1.0 / mtti_; }
    const std::string& description() const noexcept { return description_; }

    bool operator==(const EventModel&) const = default;

private:
    double mtti_;
    std::string description_;
};

/// 1 - e^(-t/mtti): probability that at least one event arrives within t.
Probability interrupt_probability(double t, const EventModel& m);

/// e^(-t/mtti): probability that no event arrives within t.
Probability survival_probability(double t, const EventModel& m);

/// The exponential reliability term as read under `c`: interrupt probability
/// for the literal reading, survival probability otherwise.
Probability exponential_reliability(double t, const EventModel& m, Convention c);

/// Inverse-CDF transform of a uniform variate in (0,1).
double interarrival_from_uniform(double u, double mtti);

/// Draws an exponential interarrival time, strictly positive.
template <FullRange64Generator G>
double sample_interarrival(G& rng, const EventModel& m)
{
    return interarrival_from_uniform(open_unit(rng()), m.mtti());
}

} // namespace resil
