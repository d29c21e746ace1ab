#pragma once

#include <stdexcept>
#include <string>

namespace emzv {

/// Root of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ArgumentError : Error {
    using Error::Error;
};

struct ParseError : ArgumentError {
    using ArgumentError::ArgumentError;
};

/// An operation was called outside its documented domain.
struct PreconditionError : Error {
    using Error::Error;
};

/// The requested identity exists but is vacuous for this input.
struct DegenerateError : PreconditionError {
    using PreconditionError::PreconditionError;
};

/// Exact division of u_1...u_r P_l by its denominator left a remainder.
struct NonPolynomialError : Error {
    using Error::Error;
};

// Numerical failures. The CLI maps all of these to one exit code.
struct NumericError : Error {
    using Error::Error;
};

struct NonConvergence : NumericError {
    using NumericError::NumericError;
};

struct PoleError : NumericError {
    using NumericError::NumericError;
};

struct AliasError : NumericError {
    using NumericError::NumericError;
};

struct ToleranceError : NumericError {
    using NumericError::NumericError;
};

struct FitError : NumericError {
    using NumericError::NumericError;
};

}  // namespace emzv
