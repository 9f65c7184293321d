#pragma once

#include <stdexcept>
#include <string>

namespace evidencia {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A dataset uncertainty sigma[n] <= 0.
struct InvalidUncertaintyError : Error {
    using Error::Error;
};

/// Requested model dimension K exceeds the data dimension N.
struct OverparameterizedError : Error {
    using Error::Error;
};

/// The basis does not supply enough functions for the requested K.
struct BasisExhaustedError : Error {
    using Error::Error;
};

/// Design matrix numerically rank-deficient (smallest eigenvalue below tolerance).
struct SingularDesignError : Error {
    using Error::Error;
};

/// Could not construct a full orthonormal noise-space basis.
struct DegenerateSpaceError : Error {
    using Error::Error;
};

/// Zero signal norm where a positive one is required (F_sq = 0 with K >= 2).
struct DegenerateSignalError : Error {
    using Error::Error;
};

/// Argument outside a function's mathematical domain.
struct DomainError : Error {
    using Error::Error;
};

/// An iterative numerical procedure failed to converge.
struct NumericalError : Error {
    using Error::Error;
};

/// Invalid run configuration (bad flags, malformed input files).
struct ConfigError : Error {
    using Error::Error;
};

} // namespace evidencia
