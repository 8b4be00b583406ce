#pragma once

#include <stdexcept>
#include <string>

namespace fatflat {

// Every failure the library reports derives from Error so callers (the CLI in
// particular) can map categories onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside the range where an operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A row or vector whose length does not match the matrix it is fed to.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Random sampling failed to produce a configuration in general position, or
/// an instance computation contradicted a genericity assumption.
class GenericityFailure : public Error {
 public:
  using Error::Error;
};

/// A configuration the closed-form machinery does not model (e.g. nonempty
/// triple intersections, curves inside X).
class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

/// A virtual system with a negative degree or multiplicity.
class NotEffective : public Error {
 public:
  using Error::Error;
};

/// A documented hypothesis of an operation does not hold for the input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace fatflat
