#pragma once

#include <stdexcept>
#include <string>

namespace vaxfront {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

/// The dominant eigenvalue is zero, so no Perron pair exists.
class ZeroRadius : public Error {
public:
    using Error::Error;
};

/// The Perron root is not an algebraically simple eigenvalue.
class NonSimple : public Error {
public:
    using Error::Error;
};

class ComplexSpectrum : public Error {
public:
    using Error::Error;
};

class NotDisconnecting : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class SolverStall : public Error {
public:
    using Error::Error;
};

class PreconditionFailed : public Error {
public:
    using Error::Error;
};

} // namespace vaxfront
