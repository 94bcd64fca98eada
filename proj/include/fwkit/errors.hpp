#pragma once

#include <stdexcept>
#include <string>

namespace fwkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: non-finite values, wrong dimensions, bad parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent internal structure, e.g. atoms of different dimension in one set.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation was violated by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// The requested operation is not supported for this region or objective.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// An iterative routine failed to converge; `residual` holds the last progress measure.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace fwkit
