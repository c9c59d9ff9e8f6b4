#pragma once

#include <stdexcept>
#include <string>

namespace bhbent {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments does not hold (modulus mismatch,
/// non-coprime multiplier, malformed permutation table, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed matrix file or JSON document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured candidate budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace bhbent
