#pragma once

#include <stdexcept>
#include <string>

namespace orbitfn {

/// Base class of everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unsupported algebra type/rank, or a Cartan matrix that does not yield a
/// finite root system.
class InvalidAlgebra : public Error {
 public:
  using Error::Error;
};

class NotARoot : public Error {
 public:
  using Error::Error;
};

/// Operation needs a root system with two root lengths.
class NoTwoLengths : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Group order exceeds the enumeration cap; use orbit-based APIs instead.
class GroupTooLarge : public Error {
 public:
  using Error::Error;
};

class FactorizationFailure : public Error {
 public:
  using Error::Error;
};

/// S^L / S^S requested on a simply-laced system.
class UnsupportedFamily : public Error {
 public:
  using Error::Error;
};

/// A theorem-level identity failed to hold. Never expected in practice.
class IdentityViolation : public Error {
 public:
  using Error::Error;
};

class NonInvariant : public Error {
 public:
  using Error::Error;
};

/// Weight outside the allowed set, e.g. a non-dominant lambda.
class InvalidWeight : public Error {
 public:
  using Error::Error;
};

class FoldDivergence : public Error {
 public:
  using Error::Error;
};

}  // namespace orbitfn
