#pragma once

#include <stdexcept>
#include <string>

namespace imago {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An event bitmask that does not fit the ambient algebra (bits >= 2^n).
struct InvalidEventError : Error {
    using Error::Error;
};

/// An operation was invoked outside its domain (e.g. updating on a bottom antecedent).
struct DomainError : Error {
    using Error::Error;
};

/// Requested enumeration space exceeds the configured budget.
struct BudgetExceededError : Error {
    using Error::Error;
};

/// Requested constraint set admits no selection function.
struct UnsatisfiableConstraintsError : Error {
    using Error::Error;
};

/// Rejection sampling gave up before satisfying the global constraints.
struct RetryCapExhaustedError : Error {
    using Error::Error;
};

/// A value-level invariant is broken (probability not normalized, bad lambda cell, ...).
struct ValidationError : Error {
    using Error::Error;
};

/// Malformed model or report document.
struct ParseError : Error {
    using Error::Error;
};

} // namespace imago
