// errors.hpp - exception taxonomy shared by all echkit modules.
#pragma once

#include <stdexcept>
#include <string>

namespace echkit {

// Input lies outside an operation's mathematical domain (CLI exit 3).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Malformed call or argument (CLI exit 2).
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An internal cross-check failed; indicates a bug, not bad input (CLI exit 4).
struct consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An enumeration guard was exceeded (brute-force size caps, recursion caps).
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A sampled boundary chain became unusable after rational rounding;
// the caller should increase the sample count or the denominator bound.
struct discretization_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace echkit
