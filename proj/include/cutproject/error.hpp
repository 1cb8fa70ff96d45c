#pragma once

#include <stdexcept>
#include <string>

namespace cutproject {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (descriptor mismatch, bad JSON, singular
/// lattice matrix, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An integer-coordinate enumeration would exceed the configured candidate
/// budget.
class EnumerationOverflow : public Error {
 public:
  using Error::Error;
};

/// A certification step (generic lattice, injectivity, witness inclusion)
/// failed. `witness()` carries a human readable counterexample.
class CertificationFailure : public Error {
 public:
  CertificationFailure(const std::string& what, std::string witness)
      : Error(what), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

/// Float-mode commensurability search neither found a relation nor could
/// exclude one within its coefficient bound.
class CommensurabilityUnknown : public Error {
 public:
  using Error::Error;
};

/// A membership query fell outside the truncation region on which an
/// augmented window is certified.
class OutOfCertifiedRange : public Error {
 public:
  using Error::Error;
};

/// A generated substitution word does not cover the requested box.
class CoverageError : public Error {
 public:
  using Error::Error;
};

}  // namespace cutproject
