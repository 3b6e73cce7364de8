#pragma once

#include <stdexcept>
#include <string>

namespace bikoeff {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A closed-form bound is undefined for the given generator (zero denominator).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Malformed class-spec text, number literal, config, or report file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The oracle could not find any feasible coefficient system.
class SearchError : public Error {
 public:
  using Error::Error;
};

}  // namespace bikoeff
