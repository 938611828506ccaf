#pragma once

#include <stdexcept>
#include <string>

namespace regpt {

/// Base class for every error this library reports.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of the operation (e.g. r <= 0).
struct DomainError : Error {
    using Error::Error;
};

/// A gamma-function argument too close to a non-positive integer.
struct PoleError : Error {
    using Error::Error;
};

/// Result (or an intermediate) left the representable floating range.
struct OverflowError : Error {
    using Error::Error;
};

/// A series failed to reach tolerance within its iteration budget.
struct ConvergenceError : Error {
    using Error::Error;
};

/// Degenerate parameter combination (vanishing structural denominator).
struct DegeneracyError : Error {
    using Error::Error;
};

/// Quantum-number index outside the allowed range.
struct IndexError : Error {
    using Error::Error;
};

/// Wavenumber too close to the k = 0 continuum threshold.
struct ThresholdError : Error {
    using Error::Error;
};

/// Least-squares fit rejected as ill-conditioned.
struct FitError : Error {
    using Error::Error;
};

} // namespace regpt
