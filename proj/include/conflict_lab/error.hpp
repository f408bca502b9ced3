#pragma once

#include <stdexcept>
#include <string>

namespace clab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (function specs, trees, rationals, points).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An algorithm was asked to run above its declared arity cap.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the arguments failed (constant table, invalid
/// distribution pair, tree that does not compute the function, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace clab
