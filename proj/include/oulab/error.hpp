#pragma once

#include <stdexcept>
#include <string>

namespace oulab {

// Base of every error raised by the library. Precondition violations on plain
// arguments (negative times, empty panels) use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(int expected, int got)
      : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(got)) {}
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class CornerPoint : public Error {
 public:
  using Error::Error;
};

class NotOnBoundary : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  explicit UnsupportedDimension(int dim)
      : Error("unsupported dimension " + std::to_string(dim)) {}
};

class MassTooSmall : public Error {
 public:
  using Error::Error;
};

class OrderTooHigh : public Error {
 public:
  using Error::Error;
};

class ResolutionTooCoarse : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class BelowFloor : public Error {
 public:
  using Error::Error;
};

// Malformed expression text. column is 1-based within the parsed string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : Error(what + " at column " + std::to_string(column)), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

}  // namespace oulab
