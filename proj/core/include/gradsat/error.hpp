#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gradsat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed CSV or DIMACS input. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// An argument outside its documented range (threshold > 1, min_len < 1, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The threshold asks for longer chains than there are transactions, or
/// for longer patterns than there are attributes.
class InfeasibleThreshold : public Error {
 public:
  using Error::Error;
};

/// Maximal-chain enumeration exceeded its configured cap.
class ChainLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// A solver model that does not decode to a valid placement. Signals an
/// encoder bug, never bad user input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gradsat
