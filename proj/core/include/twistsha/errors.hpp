#pragma once

#include <stdexcept>
#include <string>

namespace twistsha {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An argument violates a documented precondition (invalid discriminant,
/// zero input, sign condition, malformed file, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// A coefficient beyond the known precision of a series was requested.
/// Never silently answered with 0.
class PrecisionError : public InputError {
public:
    using InputError::InputError;
};

/// A plus-space coefficient entering a ratio is zero: the central L-value
/// may vanish and the coefficient-ratio surrogate is unusable.
class VanishingCoefficientError : public InputError {
public:
    using InputError::InputError;
};

/// An internal consistency check failed (e.g. a non-integral coefficient
/// where integrality is guaranteed). Indicates a bug, not bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace twistsha
