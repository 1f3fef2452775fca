#pragma once

#include <stdexcept>
#include <string>

namespace pettylab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatch, out-of-range counts, bad matrices.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The body (or generator set) has empty interior.
class FlatBodyError : public Error {
 public:
  using Error::Error;
};

/// A centrally symmetric body was required.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// A body file could not be read: bad JSON, missing or unexpected fields, wrong types.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

/// A body file parsed but describes an invalid body (non-concave profile, broken symmetry claim).
class InvalidBodyError : public Error {
 public:
  using Error::Error;
};

}  // namespace pettylab
