#include "resil/event_model.hpp"

#include <cmath>
#include <utility>

namespace resil {

namespace {

void require_time(double t)
{
    if (!(t >= 0.0))
        throw DomainError("time must be nonnegative, got " + std::to_string(t));
}

} // namespace

EventModel::EventModel(double mtti, std::string description)
    : mtti_(mtti), description_(std::move(description))
{
    if (!(mtti > 0.0) || !std::isfinite(mtti))
        throw DomainError("mtti must be positive and finite, got " + std::to_string(mtti));
}

Probability interrupt_probability(double t, const EventModel& m)
{
    require_time(t);
    // -expm1 keeps precision for t << mtti
    return {-std::expm1(-t / m.mtti()), false};
}

Probability survival_probability(double t, const EventModel& m)
{
    require_time(t);
    return {std::exp(-t / m.mtti()), false};
}

Probability exponential_reliability(double t, const EventModel& m, Convention c)
{
    return c == Convention::Literal ? interrupt_probability(t, m) : survival_probability(t, m);
}

double interarrival_from_uniform(double u, double mtti)
{
    if (!(u > 0.0 && u < 1.0))
        throw DomainError("uniform variate must lie in (0,1)");
    return -mtti * std::log(u);
}

} // namespace resil
