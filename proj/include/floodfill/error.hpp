#pragma once

#include <stdexcept>
#include <string>

namespace floodfill {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed grid file: bad header, short or excess data.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A value or argument violates a data-model invariant (NaN cell, bad dims).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Priority queue contract violation (empty pop, monotonicity, range).
class QueueError : public Error {
 public:
  using Error::Error;
};

/// File system failure while reading or writing.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A flow field whose pointers do not lead off the grid.
class FlowError : public Error {
 public:
  using Error::Error;
};

}  // namespace floodfill
