#pragma once

#include <stdexcept>
#include <string>

namespace relex {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file (corpus, embeddings, model, config). Carries the
/// 1-based line number when one is known, 0 otherwise.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A data-model invariant does not hold.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// Caller violated a documented precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace relex
