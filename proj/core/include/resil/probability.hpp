#pragma once

#include <stdexcept>
#include <string>

namespace resil {

/// Thrown when an input lies outside the domain of a model or simulator.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Which reading of the exponential reliability expressions to evaluate.
///
/// `Literal` evaluates every expression exactly as printed, so 1 - e^(-t/eta)
/// is reported as the reliability. `Survival` substitutes the conventional
/// complement, e^(-t/eta), for the exponential term.
enum class Convention { Literal, Survival };

std::string to_string(Convention c);
Convention convention_from_string(const std::string& s);

/// A probability in [0,1]. `clamped` records whether the raw formula value
/// had to be forced into the interval.
struct Probability {
    double value = 0.0;
    bool clamped = false;

    /// Clamps `raw` into [0,1]. NaN is rejected.
    static Probability clamp(double raw);

    /// Accepts `v` only if it already lies in [0,1].
    static Probability exact(double v);

    Probability complement() const { return Probability{1.0 - value, clamped}; }

    bool operator==(const Probability&) const = default;
};

} // namespace resil
