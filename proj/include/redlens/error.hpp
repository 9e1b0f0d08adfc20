#pragma once

#include <stdexcept>
#include <string>

namespace redlens {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input data or resource files (corpus lines, lexicons, feature tables).
class DataError : public Error {
public:
    using Error::Error;
};

/// Non-finite values or failed numerical preconditions during training.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Violated API precondition (empty input, dimension mismatch, k > n).
class ArgumentError : public Error {
public:
    using Error::Error;
};

} // namespace redlens
