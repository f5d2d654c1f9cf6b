#pragma once

#include <stdexcept>
#include <string>

namespace spt {

// Input outside the documented domain: bad weights, bad parameters, malformed CSV.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Two series that must live on the same partition level do not.
struct LengthMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A discrete rebalancing step drove portfolio wealth to zero or below.
struct WealthNonpositive : std::runtime_error {
    WealthNonpositive(double when, double factor)
        : std::runtime_error("wealth factor " + std::to_string(factor) +
                             " <= 0 at time " + std::to_string(when)),
          time(when),
          step_factor(factor) {}

    double time;
    double step_factor;
};

}  // namespace spt
