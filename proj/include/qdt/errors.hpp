#pragma once

#include <stdexcept>
#include <string>

namespace qdt {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (bad index, bad dimension, bad range).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A value breaks a documented invariant (non-Hermitian state, probabilities not summing to one, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

class NormalizationError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Everything is zero where at least one positive entry is needed.
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Utility set that is not entirely nonnegative (gains) or entirely negative (losses).
class SignDomainError : public DomainError {
public:
    using DomainError::DomainError;
};

class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Malformed experiment document. `where` carries the line or field that failed.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::string where)
        : Error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

}  // namespace qdt
