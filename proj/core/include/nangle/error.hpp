#pragma once

#include <stdexcept>
#include <string>

namespace nangle {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed ring spec, JSON document or element encoding.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Operands live over different rings.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// Matrix or sequence shapes do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (non-unit where a unit is
/// required, non-commuting square, parity violation, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace nangle
