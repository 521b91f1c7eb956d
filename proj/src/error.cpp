#include "klb/error.hpp"

namespace klb {

InvalidArgument::InvalidArgument(const std::string& what) : std::invalid_argument(what) {}

NumericalError::NumericalError(const std::string& what) : std::runtime_error(what) {}

}  // namespace klb
