#pragma once

#include <stdexcept>
#include <string>

namespace rrp {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class NonMonotoneTriple : public Error {
public:
    using Error::Error;
};

class GridMismatch : public Error {
public:
    using Error::Error;
};

class InvalidExponent : public Error {
public:
    using Error::Error;
};

class ExponentMismatch : public Error {
public:
    using Error::Error;
};

class InvalidHurst : public Error {
public:
    using Error::Error;
};

class EmbeddingFailure : public Error {
public:
    using Error::Error;
};

class BaseMismatch : public Error {
public:
    using Error::Error;
};

class OrderUnavailable : public Error {
public:
    using Error::Error;
};

class NonFiniteOutput : public Error {
public:
    using Error::Error;
};

class BoundPreconditionViolated : public Error {
public:
    using Error::Error;
};

class StepTooSmall : public Error {
public:
    using Error::Error;
};

class MaxItersExceeded : public Error {
public:
    using Error::Error;
};

class UnknownCurve : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace rrp
