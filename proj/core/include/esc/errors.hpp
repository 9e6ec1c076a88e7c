#pragma once

#include <stdexcept>

namespace esc {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text, CSV or JSON input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A query outside the permitted domain, e.g. a timestamp outside a
/// series' covered span or a window reaching before the first sample.
class RangeError : public Error {
public:
    using Error::Error;
};

/// A structural invariant violation: duplicate ids, unordered samples,
/// negative capacities, out-of-range configuration values.
class ValidationError : public Error {
public:
    using Error::Error;
};

} // namespace esc
