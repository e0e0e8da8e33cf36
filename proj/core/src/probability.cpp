#include "resil/probability.hpp"

#include <cmath>

namespace resil {

std::string to_string(Convention c)
{
    return c == Convention::Literal ? "literal" : "survival";
}

Convention convention_from_string(const std::string& s)
{
    if (s == "literal")
        return Convention::Literal;
    if (s == "survival")
        return Convention::Survival;
    throw DomainError("unknown convention '" + s + "' (expected literal|survival)");
}

Probability Probability::clamp(double raw)
{
    if (std::isnan(raw))
        throw DomainError("probability is NaN");
    if (raw < 0.0)
        return {0.0, true};
    if (raw > 1.0)
        return {1.0, true};
    return {raw, false};
}

Probability Probability::exact(double v)
{
    if (!(v >= 0.0 && v <= 1.0))
        throw DomainError("probability " + std::to_string(v) + " outside [0,1]");
    return {v, false};
}

} // namespace resil
