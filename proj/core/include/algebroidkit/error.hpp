#pragma once

#include <stdexcept>
#include <string>

namespace algebroidkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes, arities or charts that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the input data failed (invalid presentation, stale inverse, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A construction that exists in theory could not be carried out on the supplied model.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace algebroidkit
