#pragma once

#include <stdexcept>
#include <string>

namespace phi {

/// Modulus/iteration limit of factorial_mod exceeded.
struct IterationCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A prime was required (e.g. the p of a Legendre valuation) but the
/// argument is composite.
struct NotPrimeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the documented domain of an operation.
struct RangeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Wrong optional-argument shape for a built-in system (e.g. y given for
/// a system that has no y).
struct ArityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace phi
