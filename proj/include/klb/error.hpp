#pragma once

#include <stdexcept>
#include <string>

namespace klb {

/// Raised when an input violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
  explicit InvalidArgument(const std::string& what);
};

/// Raised when a numerical procedure fails: singular systems, non-convergent
/// iterations, overflowing integrations.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what);
};

}  // namespace klb
