#pragma once

#include <stdexcept>
#include <string>

namespace onewave {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input: bad arguments, malformed files, violated invariants.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of a mathematical function.
class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A numerical procedure failed (non-convergence, residual gate, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace onewave
