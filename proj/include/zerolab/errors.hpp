#pragma once

#include <stdexcept>
#include <string>

namespace zerolab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: a violated precondition or an invalid configuration.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure could not deliver a trustworthy answer.
class NumericError : public Error {
public:
    using Error::Error;
};

class InvalidMeasure : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class EmptyBand : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ResolutionTooCoarse : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class FrequencyOutOfBand : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InsufficientData : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class FactorizationFailure : public NumericError {
public:
    using NumericError::NumericError;
};

class OverflowGuard : public NumericError {
public:
    using NumericError::NumericError;
};

class ZeroOnContour : public NumericError {
public:
    using NumericError::NumericError;
};

class NonIntegerWinding : public NumericError {
public:
    using NumericError::NumericError;
};

} // namespace zerolab
