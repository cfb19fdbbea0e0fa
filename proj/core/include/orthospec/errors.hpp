#pragma once

#include <stdexcept>
#include <string>

namespace orthospec {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: out-of-range parameters, malformed words, bad configs.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A geometric precondition does not hold (e.g. intersecting geodesics).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Floating point trouble: overflow, failed convergence, degenerate fits.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency failure of a certified construction.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace orthospec
