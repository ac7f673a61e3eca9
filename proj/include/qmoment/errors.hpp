#pragma once

#include <stdexcept>
#include <string>

namespace qmoment {

// Base class for all library failures that are part of the contract.
struct QError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid input: parameter outside the documented domain.
struct DomainError : QError {
    using QError::QError;
};

// A series or product hit the term cap before meeting the tolerance.
struct NonConvergence : QError {
    long terms_used;
    explicit NonConvergence(const std::string& what, long terms)
        : QError(what + " (terms used: " + std::to_string(terms) + ")"), terms_used(terms) {}
};

// A lower parameter of a basic hypergeometric series is q^{-m}, m >= 0,
// and the series does not terminate before the vanishing denominator.
struct PoleInLowerParameter : QError {
    using QError::QError;
};

// A sign change could not be certified within the grid refinement budget.
struct BracketFailure : QError {
    using QError::QError;
};

// Bisection narrowed an interval without ever certifying a sign change.
struct NonSimpleZeroSuspected : QError {
    using QError::QError;
};

// Two zero tables do not overlap enough to decide interlacing.
struct InsufficientZeros : QError {
    using QError::QError;
};

// A discrete measure is truncated too coarsely for the requested tolerance.
struct TruncationTooCoarse : QError {
    using QError::QError;
};

}  // namespace qmoment
