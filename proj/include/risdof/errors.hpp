// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace risdof {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inconsistent matrix or vector shapes.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Invalid scenario, preset or parameter value. Raised before any computation.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A numerical precondition failed (singular covariance, empty null space, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A requested geometry cannot be realized (angle chain leaves [-1, 1]).
class InfeasibleError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace risdof
