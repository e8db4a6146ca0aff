#pragma once

#include <stdexcept>
#include <string>

namespace biharm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the admissible domain (k <= 0, x <= 0 for Y0/K0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation point coincides with a source or sensor.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Denominator or matrix too close to singular for a stable answer.
class ConditioningError : public Error {
public:
    using Error::Error;
};

/// Closed-form inversion produced an inadmissible intermediate (noise too large).
class InversionError : public Error {
public:
    using Error::Error;
};

/// Sensor geometry violates an algorithm precondition (collinear / coplanar).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Array or matrix dimensions incompatible with the requested operation.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Data inconsistent with the exponential-sum model (odd rank, unmatched nodes).
class DegenerateDataError : public Error {
public:
    using Error::Error;
};

/// Node phases cannot be unwrapped unambiguously (k0 too large for the geometry).
class AmbiguityError : public Error {
public:
    using Error::Error;
};

/// Indicator produced a non-finite value at a grid node.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// Experiment configuration is malformed; the message names the field.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace biharm
