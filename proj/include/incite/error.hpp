#pragma once

#include <stdexcept>
#include <string>

namespace incite {

/// Precondition violated by a caller (bad dimensions, zero vectors, k too large, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input data could not be read or is structurally unusable.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numeric routine failed to produce a usable value (root not bracketed, ...).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A quantity is undefined for the given input (e.g. retweet polarity without stanced retweeters).
class UndefinedResult : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace incite
