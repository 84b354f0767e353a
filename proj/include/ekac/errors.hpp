#pragma once

#include <stdexcept>
#include <string>

namespace ekac {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments: empty ranges, indices out of bounds, mismatched sizes.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the mathematical domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds a configured memory or enumeration budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Malformed user-supplied data (probability tables, CSV files).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Checked wide-integer arithmetic left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A cofactor resisted splitting within the retry budget.
class FactorizationError : public Error {
 public:
  FactorizationError(const std::string& what, std::string cofactor)
      : Error(what), cofactor_(std::move(cofactor)) {}

  const std::string& cofactor() const noexcept { return cofactor_; }

 private:
  std::string cofactor_;
};

}  // namespace ekac
