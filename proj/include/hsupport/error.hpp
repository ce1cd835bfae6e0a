#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hsupport {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The hyperedges share no common vertex, so no star initialization exists.
class EmptyCore : public Error {
 public:
  EmptyCore() : Error("hyperedges have an empty common intersection") {}
};

/// No support satisfies the requested constraints.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Search limits ran out before any feasible support was found.
class LimitsExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace hsupport
