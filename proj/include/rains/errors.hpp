#pragma once

#include <stdexcept>
#include <string>

namespace rains {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Matrix expected to be Hermitian is not, beyond tolerance.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation (negative
// eigenvalue under a logarithm, F outside [0,1], invalid simplex point...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// support(rho) is not contained in support(sigma).
class InfiniteEntropyError : public Error {
 public:
  using Error::Error;
};

// A definite-case certificate was requested for a singular sigma that the
// structured checker cannot handle.
class SemidefiniteSigmaError : public Error {
 public:
  using Error::Error;
};

// Malformed or invalid state description.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace rains
