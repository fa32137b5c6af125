#pragma once

#include <stdexcept>
#include <string>

namespace distorder {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed argument values (bad permutation, n > m, d < 1, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Table or configuration has the wrong number of rows/columns/points.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Ties in distances, affinely dependent simplices, singular generator sets.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

// Request exceeds the sizes this library is willing to enumerate.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// A checked operation was called on inputs that violate its hypothesis.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class StorageError : public Error {
 public:
  using Error::Error;
};

}  // namespace distorder
