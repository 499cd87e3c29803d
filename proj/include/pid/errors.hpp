#pragma once

#include <stdexcept>
#include <string>

namespace pid {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Distribution validation
class NegativeMass : public Error {
public:
    using Error::Error;
};
class NotNormalized : public Error {
public:
    using Error::Error;
};
class DimensionMismatch : public Error {
public:
    using Error::Error;
};
class ZeroConditioningEvent : public Error {
public:
    using Error::Error;
};
class InconsistentMarginals : public Error {
public:
    using Error::Error;
};

// Iterative scaling
class DegenerateIterate : public Error {
public:
    using Error::Error;
};

// Oracle
class DimensionTooLarge : public Error {
public:
    using Error::Error;
};

// Ingestion
class EmptyAfterFiltering : public Error {
public:
    using Error::Error;
};
class UnknownColumn : public Error {
public:
    using Error::Error;
};
class UnparseableNumeric : public Error {
public:
    using Error::Error;
};
class MalformedFile : public Error {
public:
    using Error::Error;
};

}  // namespace pid
