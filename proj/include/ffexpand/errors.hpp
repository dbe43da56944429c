#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ffx {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad field parameters, out-of-range indices, wrong arity.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Operands from two different fields.
class ContextMismatch : public Error {
public:
    ContextMismatch() : Error("operands belong to different fields") {}
    using Error::Error;
};

/// Well-formed input that violates a mathematical precondition
/// (inverting zero, q <= n for curve families, even q for the quadratic classifier, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A computation that would exceed a configured safety cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// Polynomial text or field spec that does not match the grammar.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace ffx
