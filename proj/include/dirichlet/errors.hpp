#pragma once

#include <stdexcept>
#include <string>

namespace dirichlet {

/// A precondition on an argument was violated.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact integer result does not fit the representable range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A configured resource cap (materialized entries, panels, ...) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure failed to reach its target. `diagnostics` is a
/// JSON object string suitable for machine consumption.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, std::string diagnostics = "{}")
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}

  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

/// The factor 1 - 2^{1-s} relating eta and zeta is numerically zero.
class SingularFactorError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace dirichlet
