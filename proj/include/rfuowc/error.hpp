#pragma once

#include <stdexcept>
#include <string>

namespace rfuowc {

/// Base class for every error raised by the library. The C API maps each
/// subclass onto one status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter record violates its invariants (w outside [0,1], N < 1, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A function argument lies outside the mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative method did not reach its tolerance within its budget.
class NonConvergenceError : public Error {
public:
    using Error::Error;
};

/// Coincident poles that cannot be separated or perturbed away.
class DegenerateParameterError : public Error {
public:
    using Error::Error;
};

/// No vertical Mellin-Barnes contour separates the two pole families.
class ContourError : public Error {
public:
    using Error::Error;
};

/// The requested evaluation is outside what the closed form supports.
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// A result that signals a numerics bug (probability above one, NaN, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

inline void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw ConfigError(what);
    }
}

} // namespace rfuowc
